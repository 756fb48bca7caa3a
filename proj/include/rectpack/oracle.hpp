#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rectpack/instance.hpp"

namespace rectpack {

inline constexpr int kOracleCellBudget = 64;

/// Occupancy of an integer box, one bit per unit cell, row-major.
struct GridState {
  struct Placed {
    int rect_id = 0;
    int x = 0;
    int y = 0;
    bool rotated = false;
  };

  int width = 0;
  int height = 0;
  std::uint64_t occupancy = 0;
  std::vector<Placed> placed;

  bool full() const;
  bool fits(int x, int y, int w, int h) const;
  void toggle(int x, int y, int w, int h);
};

struct OracleResult {
  bool feasible = false;
  std::optional<Layout> witness;
};

/// Exhaustive decision for integer instances with A * B <= 64 cells.
/// Fills the lowest, then leftmost, empty cell with each distinct unused
/// rect (both orientations when allowed). Throws InputError for
/// non-integer input or an oversized box.
OracleResult oracle_feasible(const Instance& inst);

/// Every multiset of integer rects (w <= h <= max_side) whose total area
/// equals A * B, for each box 1 <= A <= B <= max_box. Ordered by box,
/// then lexicographically by multiplicity vector; rotation allowed.
std::vector<Instance> enumerate_small_family(int max_box = 4, int max_side = 4);

}  // namespace rectpack
