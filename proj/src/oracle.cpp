#include "rectpack/oracle.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <string>

namespace rectpack {

bool GridState::full() const {
  const int cells = width * height;
  const std::uint64_t all = cells == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cells) - 1;
  return occupancy == all;
}

bool GridState::fits(int x, int y, int w, int h) const {
  if (x + w > width || y + h > height) return false;
  for (int row = y; row < y + h; ++row) {
    for (int col = x; col < x + w; ++col) {
      if ((occupancy >> (row * width + col)) & 1U) return false;
    }
  }
  return true;
}

void GridState::toggle(int x, int y, int w, int h) {
  for (int row = y; row < y + h; ++row) {
    for (int col = x; col < x + w; ++col) occupancy ^= std::uint64_t{1} << (row * width + col);
  }
}

namespace {

int as_integer(double v, const char* what) {
  const double r = std::round(v);
  if (r != v || r < 1.0 || r > 64.0) {
    throw InputError(std::string("oracle needs positive integer ") + what + ", got " + std::to_string(v));
  }
  return static_cast<int>(r);
}

struct RectType {
  int w = 0;
  int h = 0;
  std::vector<int> members;  // indices into the instance
  int used = 0;
};

class Search {
 public:
  Search(GridState grid, std::vector<RectType> types, bool rotation)
      : grid_(std::move(grid)), types_(std::move(types)), rotation_(rotation) {}

  bool run() {
    if (grid_.full()) return true;
    const int cell = std::countr_zero(~grid_.occupancy);
    const int x = cell % grid_.width;
    const int y = cell / grid_.width;
    for (auto& t : types_) {
      if (t.used == static_cast<int>(t.members.size())) continue;
      for (int turn = 0; turn < (rotation_ && t.w != t.h ? 2 : 1); ++turn) {
        const int w = turn == 0 ? t.w : t.h;
        const int h = turn == 0 ? t.h : t.w;
        if (!grid_.fits(x, y, w, h)) continue;
        grid_.toggle(x, y, w, h);
        grid_.placed.push_back({t.members[t.used] + 1, x, y, turn == 1});
        ++t.used;
        if (run()) return true;
        --t.used;
        grid_.placed.pop_back();
        grid_.toggle(x, y, w, h);
      }
    }
    return false;
  }

  const GridState& grid() const { return grid_; }

 private:
  GridState grid_;
  std::vector<RectType> types_;
  bool rotation_;
};

}  // namespace

OracleResult oracle_feasible(const Instance& inst) {
  validate(inst);
  GridState grid;
  grid.width = as_integer(inst.box.width, "box width");
  grid.height = as_integer(inst.box.height, "box height");
  if (grid.width * grid.height > kOracleCellBudget) {
    throw InputError("oracle cell budget exceeded: " + std::to_string(grid.width * grid.height) + " > " +
                     std::to_string(kOracleCellBudget));
  }

  // Identical rects are interchangeable; grouping them prunes symmetric branches.
  std::map<std::pair<int, int>, RectType> by_shape;
  long long area = 0;
  for (std::size_t i = 0; i < inst.rects.size(); ++i) {
    int w = as_integer(inst.rects[i].width, "rect side");
    int h = as_integer(inst.rects[i].height, "rect side");
    area += static_cast<long long>(w) * h;
    if (inst.rotation_allowed && w > h) std::swap(w, h);
    auto& t = by_shape[{w, h}];
    t.w = w;
    t.h = h;
    t.members.push_back(static_cast<int>(i));
  }
  if (area != static_cast<long long>(grid.width) * grid.height) return {false, std::nullopt};

  std::vector<RectType> types;
  for (auto& [shape, t] : by_shape) types.push_back(std::move(t));
  // Larger pieces first fail faster.
  std::stable_sort(types.begin(), types.end(), [](const RectType& a, const RectType& b) { return a.w * a.h > b.w * b.h; });

  Search search(std::move(grid), std::move(types), inst.rotation_allowed);
  if (!search.run()) return {false, std::nullopt};

  Layout witness;
  witness.placements.resize(inst.size());
  for (const auto& p : search.grid().placed) {
    const auto& r = inst.rects[p.rect_id - 1];
    int w = static_cast<int>(r.width);
    int h = static_cast<int>(r.height);
    const int lo = std::min(w, h);
    const int hi = std::max(w, h);
    if (inst.rotation_allowed) {
      // Shapes were canonicalized to (short, long); turn == 1 means long side horizontal.
      w = p.rotated ? hi : lo;
      h = p.rotated ? lo : hi;
    }
    witness.placements[p.rect_id - 1] = {static_cast<double>(p.x), static_cast<double>(p.y),
                                         static_cast<double>(p.x + w), static_cast<double>(p.y + h)};
  }
  return {true, std::move(witness)};
}

std::vector<Instance> enumerate_small_family(int max_box, int max_side) {
  std::vector<std::pair<int, int>> shapes;
  for (int w = 1; w <= max_side; ++w) {
    for (int h = w; h <= max_side; ++h) shapes.emplace_back(w, h);
  }

  std::vector<Instance> out;
  std::vector<int> counts(shapes.size(), 0);
  for (int A = 1; A <= max_box; ++A) {
    for (int B = A; B <= max_box; ++B) {
      // Lexicographic over multiplicity vectors: recurse over shapes in order.
      auto recurse = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i == shapes.size()) {
          if (remaining != 0) return;
          std::vector<std::pair<double, double>> sides;
          for (std::size_t k = 0; k < shapes.size(); ++k) {
            for (int c = 0; c < counts[k]; ++c) sides.emplace_back(shapes[k].first, shapes[k].second);
          }
          out.push_back(make_instance({static_cast<double>(A), static_cast<double>(B)}, sides, true));
          return;
        }
        const int piece = shapes[i].first * shapes[i].second;
        for (int c = 0; c * piece <= remaining; ++c) {
          counts[i] = c;
          self(self, i + 1, remaining - c * piece);
        }
        counts[i] = 0;
      };
      recurse(recurse, 0, A * B);
    }
  }
  return out;
}

}  // namespace rectpack
