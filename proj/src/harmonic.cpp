#include "rectpack/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace rectpack {

namespace {

constexpr double kPiSquared = std::numbers::pi * std::numbers::pi;

// Integrals over the unit square.
constexpr double kIntX = 0.5;
constexpr double kIntXY = 0.25;
constexpr double kIntXXPlusYY = 2.0 / 3.0;

// sum_n area_n * (dx_n^2 + dy_n^2) / 12 for the harmonic family; the
// rotation-invariant part of the second moments that the centers miss.
double intra_rect_correction(long n_trunc, bool extrapolate_tail) {
  double sum = 0.0;
  for (long n = n_trunc; n >= 1; --n) {  // small terms first
    const double a = 1.0 / static_cast<double>(n);
    const double b = 1.0 / static_cast<double>(n + 1);
    sum += a * b * (a * a + b * b);
  }
  // In u = n + 1/2 the term is 2/u^4 + O(u^-6). The tail is then a midpoint
  // sum for the integral of 2/u^4 from N + 1, good to O(N^-5).
  if (extrapolate_tail) {
    const double m = static_cast<double>(n_trunc) + 1.0;
    sum += 2.0 / (3.0 * m * m * m);
  }
  return sum / 12.0;
}

}  // namespace

std::string_view to_string(IdentityId id) {
  switch (id) {
    case IdentityId::x_first: return "X_FIRST";
    case IdentityId::y_first: return "Y_FIRST";
    case IdentityId::xy_cross: return "XY_CROSS";
    case IdentityId::sum_squares: return "SUM_SQUARES";
    case IdentityId::sum_of_sum_sq: return "SUM_OF_SUM_SQ";
    case IdentityId::diff_sq: return "DIFF_SQ";
  }
  return "UNKNOWN";
}

IdentityId parse_identity(std::string_view text) {
  for (IdentityId id : kAllIdentities) {
    if (to_string(id) == text) return id;
  }
  throw InputError("unknown identity '" + std::string(text) + "'");
}

double rhs_constant(IdentityId id) {
  switch (id) {
    case IdentityId::x_first:
    case IdentityId::y_first: return 0.5;
    case IdentityId::xy_cross: return 0.25;
    case IdentityId::sum_squares: return 1.0 / 3.0 + kPiSquared / 36.0;
    case IdentityId::sum_of_sum_sq: return 5.0 / 6.0 + kPiSquared / 36.0;
    case IdentityId::diff_sq: return kPiSquared / 36.0 - 1.0 / 6.0;
  }
  return 0.0;
}

double rhs_derive(IdentityId id, long n_trunc, bool extrapolate_tail) {
  if (n_trunc < 1) throw InputError("n_trunc must be >= 1");
  switch (id) {
    case IdentityId::x_first:
    case IdentityId::y_first: return kIntX;
    case IdentityId::xy_cross: return kIntXY;
    case IdentityId::sum_squares: return kIntXXPlusYY - intra_rect_correction(n_trunc, extrapolate_tail);
    case IdentityId::sum_of_sum_sq:
      return kIntXXPlusYY + 2.0 * kIntXY - intra_rect_correction(n_trunc, extrapolate_tail);
    case IdentityId::diff_sq: return kIntXXPlusYY - 2.0 * kIntXY - intra_rect_correction(n_trunc, extrapolate_tail);
  }
  return 0.0;
}

bool rhs_consistency(double tol) {
  const double sq = rhs_constant(IdentityId::sum_squares);
  const double cross = rhs_constant(IdentityId::xy_cross);
  return std::abs(rhs_constant(IdentityId::sum_of_sum_sq) - (sq + 2.0 * cross)) <= tol &&
         std::abs(rhs_constant(IdentityId::diff_sq) - (sq - 2.0 * cross)) <= tol;
}

IdentityEval identity_partial(const Layout& layout, IdentityId id) {
  IdentityEval eval;
  eval.n = static_cast<long>(layout.size());
  eval.rhs_constant = rhs_constant(id);
  double lhs = 0.0;
  double covered = 0.0;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const auto& p = layout.placements[i];
    const double n = static_cast<double>(i + 1);
    const double lo = std::min(p.dx(), p.dy());
    const double hi = std::max(p.dx(), p.dy());
    if (std::abs(hi - 1.0 / n) > 1e-9 || std::abs(lo - 1.0 / (n + 1.0)) > 1e-9) {
      throw InputError("placement " + std::to_string(i + 1) + " is not a harmonic rectangle");
    }
    const double weight = 1.0 / (n * (n + 1.0));
    const double x = p.cx();
    const double y = p.cy();
    double term = 0.0;
    switch (id) {
      case IdentityId::x_first: term = x; break;
      case IdentityId::y_first: term = y; break;
      case IdentityId::xy_cross: term = x * y; break;
      case IdentityId::sum_squares: term = x * x + y * y; break;
      case IdentityId::sum_of_sum_sq: term = (x + y) * (x + y); break;
      case IdentityId::diff_sq: term = (x - y) * (x - y); break;
    }
    lhs += weight * term;
    covered += weight;
  }
  eval.lhs_partial = lhs;
  eval.covered_area = covered;
  return eval;
}

}  // namespace rectpack
