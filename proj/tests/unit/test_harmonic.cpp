#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "rectpack/harmonic.hpp"
#include "rectpack/verifier.hpp"

using namespace rectpack;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// Guillotine free-list packing of rects 1..N: first free slot that fits
// in either orientation, leftover split along the shorter side.
// Disjoint and inside the unit square by construction.
std::optional<Layout> free_list_layout(int n_rects) {
  struct Free {
    double x, y, w, h;
  };
  std::vector<Free> free{{0, 0, 1, 1}};
  constexpr double eps = 1e-12;
  Layout layout;
  for (int n = 1; n <= n_rects; ++n) {
    const double a = 1.0 / n;
    const double b = 1.0 / (n + 1.0);
    bool placed = false;
    for (std::size_t i = 0; i < free.size() && !placed; ++i) {
      for (auto [pw, ph] : {std::pair{a, b}, std::pair{b, a}}) {
        const Free f = free[i];
        if (pw > f.w + eps || ph > f.h + eps) continue;
        free.erase(free.begin() + static_cast<std::ptrdiff_t>(i));
        layout.placements.push_back({f.x, f.y, f.x + pw, f.y + ph});
        if (f.w - pw < f.h - ph) {
          if (f.w - pw > eps) free.push_back({f.x + pw, f.y, f.w - pw, ph});
          if (f.h - ph > eps) free.push_back({f.x, f.y + ph, f.w, f.h - ph});
        } else {
          if (f.w - pw > eps) free.push_back({f.x + pw, f.y, f.w - pw, f.h});
          if (f.h - ph > eps) free.push_back({f.x, f.y + ph, pw, f.h - ph});
        }
        std::stable_sort(free.begin(), free.end(), [](const Free& l, const Free& r) { return l.w * l.h < r.w * r.h; });
        placed = true;
        break;
      }
    }
    if (!placed) return std::nullopt;
  }
  return layout;
}

}  // namespace

TEST_CASE("closed-form constants") {
  CHECK(rhs_constant(IdentityId::x_first) == 0.5);
  CHECK(rhs_constant(IdentityId::y_first) == 0.5);
  CHECK(rhs_constant(IdentityId::xy_cross) == 0.25);
  CHECK(rhs_constant(IdentityId::sum_squares) == doctest::Approx(0.6074890111).epsilon(1e-10));
  CHECK(rhs_constant(IdentityId::sum_of_sum_sq) == doctest::Approx(1.1074890111).epsilon(1e-10));
  CHECK(rhs_constant(IdentityId::diff_sq) == doctest::Approx(0.1074890111).epsilon(1e-9));
  CHECK(rhs_consistency(1e-15));
}

TEST_CASE("names round-trip") {
  for (IdentityId id : kAllIdentities) CHECK(parse_identity(to_string(id)) == id);
  CHECK(to_string(IdentityId::sum_of_sum_sq) == "SUM_OF_SUM_SQ");
  CHECK_THROWS_AS(parse_identity("x_first"), InputError);
}

TEST_CASE("derived right-hand sides agree with the closed forms") {
  for (IdentityId id : kAllIdentities) {
    CAPTURE(to_string(id));
    CHECK(std::abs(rhs_derive(id, 1000000) - rhs_constant(id)) <= 1e-9);
  }
  // The first-order identities need no sum at all.
  CHECK(rhs_derive(IdentityId::x_first, 1) == 0.5);
  CHECK(rhs_derive(IdentityId::xy_cross, 1) == 0.25);
  CHECK_THROWS_AS(rhs_derive(IdentityId::sum_squares, 0), InputError);
}

TEST_CASE("intra-rectangle correction sums to 4 - pi^2/3") {
  // 2/3 - (4 - pi^2/3) / 12 = 1/3 + pi^2/36.
  CHECK(2.0 / 3.0 - (4.0 - kPi2 / 3.0) / 12.0 == doctest::Approx(rhs_constant(IdentityId::sum_squares)).epsilon(1e-15));
}

TEST_CASE("truncation error decays like N^-3 without the tail") {
  const auto id = IdentityId::sum_squares;
  const double e1 = std::abs(rhs_derive(id, 100, false) - rhs_constant(id));
  const double e2 = std::abs(rhs_derive(id, 1000, false) - rhs_constant(id));
  const double slope = std::log10(e2 / e1);
  CHECK(slope == doctest::Approx(-3.0).epsilon(0.05));
  // The tail estimate buys several digits.
  CHECK(std::abs(rhs_derive(id, 100) - rhs_constant(id)) < e1 * 1e-3);
}

TEST_CASE("identity_partial on a single rect") {
  const Layout one{{{0, 0, 1, 0.5}}};
  const auto eval = identity_partial(one, IdentityId::xy_cross);
  CHECK(eval.lhs_partial == doctest::Approx(0.5 * 0.5 * 0.25));
  CHECK(eval.covered_area == 0.5);
  CHECK(eval.n == 1);
  CHECK(identity_partial(one, IdentityId::x_first).gap() == doctest::Approx(0.25));

  const Layout wrong{{{0, 0, 1, 0.4}}};
  CHECK_THROWS_AS(identity_partial(wrong, IdentityId::x_first), InputError);
}

TEST_CASE("first-moment gap is bounded by the uncovered area") {
  for (int n : {1, 2, 5, 10, 20, 100}) {
    CAPTURE(n);
    const auto packed = free_list_layout(n);
    REQUIRE(packed);
    const Layout& layout = *packed;
    const auto inst = harmonic_prefix(n);
    // Valid partial packing: in the box and disjoint (area falls short by 1/(n+1)).
    const auto report = verify_layout(inst, layout);
    CHECK(report.containment_violations.empty());
    CHECK(report.overlap_violations.empty());
    CHECK(report.size_violations.empty());

    const auto eval = identity_partial(layout, IdentityId::x_first);
    CHECK(eval.covered_area == doctest::Approx(1.0 - 1.0 / (n + 1.0)));
    // The uncovered region has area 1/(n+1) and x in [0, 1].
    CHECK(eval.gap() >= -1e-15);
    CHECK(eval.gap() <= 1.0 / (n + 1.0) + 1e-15);
  }
}
