#pragma once

#include <utility>

#include "rectpack/instance.hpp"

namespace rectpack::testing {

// Perfect squared rectangle: squares 1,4,7,8,9,10,14,15,18 tiling 32 x 33.
// Coordinates found by an exhaustive lowest-leftmost search and blessed by
// verify_exact in the verifier tests.
inline std::pair<Instance, Layout> squared_rectangle_32x33() {
  struct Square {
    int side, x, y;
  };
  constexpr Square squares[] = {{18, 0, 0}, {14, 18, 0}, {4, 18, 14}, {10, 22, 14}, {15, 0, 18},
                                {7, 15, 18}, {1, 22, 24}, {9, 23, 24}, {8, 15, 25}};
  std::vector<std::pair<double, double>> sides;
  Layout layout;
  for (const auto& s : squares) {
    sides.emplace_back(s.side, s.side);
    layout.placements.push_back({double(s.x), double(s.y), double(s.x + s.side), double(s.y + s.side)});
  }
  return {make_instance({32.0, 33.0}, sides), std::move(layout)};
}

inline std::pair<Instance, Layout> dominoes_2x2() {
  return {make_instance({2.0, 2.0}, {{1.0, 2.0}, {1.0, 2.0}}), Layout{{{0, 0, 1, 2}, {1, 0, 2, 2}}}};
}

}  // namespace rectpack::testing
