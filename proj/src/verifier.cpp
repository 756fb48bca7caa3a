#include "rectpack/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "rectpack/moment_system.hpp"

namespace rectpack {

VerificationReport verify_layout(const Instance& inst, const Layout& layout, double tol) {
  check_cardinality(inst, layout);
  VerificationReport report;
  report.tol = tol;

  const double scale = inst.box.scale();
  const double len_tol = tol * scale;
  const double A = inst.box.width;
  const double B = inst.box.height;
  const auto n = layout.size();

  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = layout.placements[i];
    const int id = inst.rects[i].id;
    const double overhang = std::max({0.0, -p.x_lo, p.x_hi - A, -p.y_lo, p.y_hi - B});
    if (overhang > len_tol) report.containment_violations.push_back({id, overhang});

    const double w = inst.rects[i].width;
    const double l = inst.rects[i].height;
    const double dx = p.dx();
    const double dy = p.dy();
    bool size_ok = false;
    if (inst.rotation_allowed) {
      size_ok = std::abs(std::min(dx, dy) - std::min(w, l)) <= len_tol &&
                std::abs(std::max(dx, dy) - std::max(w, l)) <= len_tol;
    } else {
      size_ok = std::abs(dx - w) <= len_tol && std::abs(dy - l) <= len_tol;
    }
    if (!size_ok) {
      report.size_violations.push_back({id, std::abs(dx + dy - w - l), std::abs(dx * dy - w * l)});
    }
  }

  const double area_tol = len_tol * len_tol;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = layout.placements[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& b = layout.placements[j];
      const double ox = std::min(a.x_hi, b.x_hi) - std::max(a.x_lo, b.x_lo);
      const double oy = std::min(a.y_hi, b.y_hi) - std::max(a.y_lo, b.y_lo);
      const double area = std::max(0.0, ox) * std::max(0.0, oy);
      if (area > area_tol) report.overlap_violations.push_back({inst.rects[i].id, inst.rects[j].id, area});
    }
  }

  double covered = 0.0;
  for (const auto& p : layout.placements) covered += p.dx() * p.dy();
  report.area_gap = covered - A * B;

  report.pass = report.containment_violations.empty() && report.overlap_violations.empty() &&
                report.size_violations.empty() && std::abs(report.area_gap) <= tol * A * B;
  return report;
}

namespace {

struct SignedPoint {
  double x;
  double y;
  int sign;
};

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

struct CellHash {
  std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& c) const {
    return std::hash<std::int64_t>()(c.first * 0x9e3779b97f4a7c15LL ^ c.second);
  }
};

}  // namespace

bool corner_cancellation(const Layout& layout, const BoxSpec& box, double tol) {
  std::vector<SignedPoint> points;
  points.reserve(4 * layout.size() + 4);
  for (const auto& p : layout.placements) {
    points.push_back({p.x_lo, p.y_lo, +1});
    points.push_back({p.x_hi, p.y_hi, +1});
    points.push_back({p.x_lo, p.y_hi, -1});
    points.push_back({p.x_hi, p.y_lo, -1});
  }
  // The box's own corners enter with opposite signs so that a perfect
  // packing nets to zero everywhere.
  points.push_back({0.0, 0.0, -1});
  points.push_back({box.width, box.height, -1});
  points.push_back({0.0, box.height, +1});
  points.push_back({box.width, 0.0, +1});

  DisjointSet clusters(points.size());
  const double cell = tol * box.scale();
  if (cell > 0.0) {
    std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>, CellHash> grid;
    auto key = [cell](double v) { return static_cast<std::int64_t>(std::floor(v / cell)); };
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto cx = key(points[i].x);
      const auto cy = key(points[i].y);
      for (std::int64_t gx = cx - 1; gx <= cx + 1; ++gx) {
        for (std::int64_t gy = cy - 1; gy <= cy + 1; ++gy) {
          auto it = grid.find({gx, gy});
          if (it == grid.end()) continue;
          for (std::size_t j : it->second) {
            if (std::abs(points[i].x - points[j].x) <= cell && std::abs(points[i].y - points[j].y) <= cell) {
              clusters.unite(i, j);
            }
          }
        }
      }
      grid[{cx, cy}].push_back(i);
    }
  } else {
    std::map<std::pair<double, double>, std::size_t> first;
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto [it, inserted] = first.try_emplace({points[i].x, points[i].y}, i);
      if (!inserted) clusters.unite(i, it->second);
    }
  }

  std::unordered_map<std::size_t, int> charge;
  for (std::size_t i = 0; i < points.size(); ++i) charge[clusters.find(i)] += points[i].sign;
  return std::all_of(charge.begin(), charge.end(), [](const auto& kv) { return kv.second == 0; });
}

double moment_residual_of_layout(const Instance& inst, const Layout& layout, int smax) {
  check_cardinality(inst, layout);
  // Evaluate on the layout's own corners regardless of the rotation flag.
  Instance corners_only = inst;
  corners_only.rotation_allowed = true;
  const MomentSystem sys(std::move(corners_only), smax, Mode::rotatable);
  return sys.residual(sys.layout_to_vars(layout)).moment_max_abs();
}

}  // namespace rectpack
