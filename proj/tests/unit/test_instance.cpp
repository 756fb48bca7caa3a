#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "rectpack/exact.hpp"
#include "rectpack/instance.hpp"
#include "rectpack/verifier.hpp"

using namespace rectpack;

TEST_CASE("parse_instance maps fields") {
  const Instance inst = parse_instance(R"({"box":[2,2],"rects":[[1,2],[1,2]]})");
  CHECK(inst.size() == 2);
  CHECK(inst.box == BoxSpec{2.0, 2.0});
  CHECK(inst.rects[1] == RectSpec{1.0, 2.0, 2});
  CHECK(inst.rotation_allowed);

  const Instance single = parse_instance(R"({"box":[1,1],"rects":[[1,1]],"rotation":false})");
  CHECK(single.size() == 1);
  CHECK_FALSE(single.rotation_allowed);
}

TEST_CASE("parse_instance accepts p/q strings and explicit ids") {
  const Instance inst = parse_instance(R"({"box":["3/2",1],"rects":[["1/2",1,2],[1,1,1]]})");
  CHECK(inst.box.width == 1.5);
  CHECK(inst.rects[0].width == 1.0);  // id 1 comes first
  CHECK(inst.rects[1].width == 0.5);
}

TEST_CASE("parse_instance rejects bad documents") {
  CHECK_THROWS_AS(parse_instance(R"({"box":[1,1],"rects":[[0,1]]})"), InputError);
  CHECK_THROWS_AS(parse_instance(R"({"box":[1,1],"rects":[[-1,1]]})"), InputError);
  CHECK_THROWS_AS(parse_instance(R"({"box":[1],"rects":[]})"), InputError);
  CHECK_THROWS_AS(parse_instance(R"({"box":[1,1]})"), InputError);
  CHECK_THROWS_AS(parse_instance("{not json"), InputError);
  CHECK_THROWS_AS(parse_instance(R"({"box":[1,1],"rects":[[1,"x"]]})"), InputError);
  CHECK_THROWS_AS(parse_instance(R"({"box":[1,1],"rects":[[1,1,1],[1,1,1]]})"), InputError);
  CHECK_THROWS_AS(parse_instance(R"({"box":[1,1],"rects":[[1,1,1],[1,1]]})"), InputError);
  CHECK_THROWS_AS(parse_instance(R"({"box":[1,1],"rects":[[1,1,3],[1,1,1]]})"), InputError);
  CHECK_THROWS_AS(parse_instance(R"({"box":[1,1],"rects":[[1,1]],"rotation":1})"), InputError);
}

TEST_CASE("check_area verdicts") {
  const auto dominoes = make_instance({2, 2}, {{1, 2}, {1, 2}});
  CHECK(check_area(dominoes).status == AreaStatus::exact);

  const auto short_one = make_instance({2, 1}, {{1, 1}});
  const auto verdict = check_area(short_one);
  CHECK(verdict.status == AreaStatus::infeasible);
  CHECK(verdict.delta == -1.0);

  // Telescoping: sum_{n<=10} 1/(n(n+1)) = 1 - 1/11.
  const auto harmonic = check_area(harmonic_prefix(10));
  CHECK(harmonic.status == AreaStatus::near);
  CHECK(harmonic.delta == doctest::Approx(-1.0 / 11.0).epsilon(1e-13));
}

TEST_CASE("harmonic_prefix") {
  const auto one = harmonic_prefix(1);
  REQUIRE(one.size() == 1);
  CHECK(one.rects[0].width == 1.0);
  CHECK(one.rects[0].height == 0.5);
  CHECK(one.box == BoxSpec{1.0, 1.0});

  const auto three = harmonic_prefix(3);
  CHECK(three.rects[1].width == 0.5);
  CHECK(three.rects[1].height == doctest::Approx(1.0 / 3.0));
  CHECK(three.rects[2].width == doctest::Approx(1.0 / 3.0));
  CHECK(three.rects[2].height == 0.25);

  for (int n : {1, 10, 100, 1000}) {
    CHECK(std::abs(harmonic_prefix(n).area_sum() - (1.0 - 1.0 / (n + 1))) <= 1e-12);
  }
  CHECK_THROWS_AS(harmonic_prefix(0), InputError);
}

TEST_CASE("gen_guillotine trivial cases") {
  const auto [inst0, lay0] = gen_guillotine(5, 0, {1, 1});
  REQUIRE(inst0.size() == 1);
  CHECK(lay0.placements[0] == Placement{0, 0, 1, 1});

  const auto [inst1, lay1] = gen_guillotine(5, 1, {1, 1});
  REQUIRE(inst1.size() == 2);
  const auto& a = lay1.placements[0];
  const auto& b = lay1.placements[1];
  const bool shares_vertical = a.x_hi == b.x_lo && a.y_lo == 0 && a.y_hi == 1 && b.y_lo == 0 && b.y_hi == 1;
  const bool shares_horizontal = a.y_hi == b.y_lo && a.x_lo == 0 && a.x_hi == 1 && b.x_lo == 0 && b.x_hi == 1;
  CHECK((shares_vertical || shares_horizontal));
  CHECK(inst1.area_sum() == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(gen_guillotine(1, -1, {1, 1}), InputError);
}

TEST_CASE("gen_guillotine always yields a verified perfect dissection") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int cuts = static_cast<int>(seed % 51);
    const BoxSpec box{1.0 + 0.37 * (seed % 4), 2.0 - 0.21 * (seed % 3)};
    const auto [inst, layout] = gen_guillotine(seed, cuts, box);
    CAPTURE(seed);
    CHECK(inst.size() == static_cast<std::size_t>(cuts) + 1);
    CHECK(verify_layout(inst, layout).pass);
    // Stored sides equal the coordinate differences exactly, even for boxes
    // that are not dyadic.
    CHECK(verify_exact(to_exact(inst), to_exact(layout)).pass);
    double covered = 0.0;
    for (const auto& p : layout.placements) covered += p.dx() * p.dy();
    CHECK(std::abs(covered - box.area()) <= 1e-12 * box.area());
    // Cut fractions in [0.2, 0.8] keep every side away from zero.
    for (const auto& r : inst.rects) CHECK(std::min(r.width, r.height) > 0.0);
  }
}

TEST_CASE("gen_guillotine is deterministic per seed") {
  const auto a = gen_guillotine(42, 12, {3, 2});
  const auto b = gen_guillotine(42, 12, {3, 2});
  const auto c = gen_guillotine(43, 12, {3, 2});
  CHECK(a.second == b.second);
  CHECK(a.first == b.first);
  CHECK_FALSE(a.second == c.second);
}

TEST_CASE("layout and instance serialization round-trips") {
  const Layout single{{{0, 0, 1, 1}}};
  CHECK(parse_layout(serialize_layout(single)) == single);
  CHECK(parse_layout(serialize_layout(Layout{})) == Layout{});
  const auto [sq_inst, sq_layout] = testing::squared_rectangle_32x33();
  CHECK(parse_layout(serialize_layout(sq_layout)) == sq_layout);

  // Property: bitwise round trip on generated, non-dyadic coordinates.
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto [inst, layout] = gen_guillotine(seed, 9, {1.3, 0.7});
    CHECK(parse_layout(serialize_layout(layout)) == layout);
    CHECK(parse_instance(serialize_instance(inst)) == inst);
  }

  CHECK_THROWS_AS(parse_layout(R"({"placements":[[0,0,1]]})"), InputError);
  CHECK_THROWS_AS(parse_layout(R"({"rects":[]})"), InputError);
  CHECK_THROWS_AS(check_cardinality(sq_inst, single), InputError);
}
