#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rectpack {

/// Thrown for malformed documents and invalid domain values.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RectSpec {
  double width = 0.0;
  double height = 0.0;
  int id = 0;  // 1-based, contiguous within an instance

  double area() const { return width * height; }
  bool operator==(const RectSpec&) const = default;
};

struct BoxSpec {
  double width = 0.0;   // A
  double height = 0.0;  // B

  double area() const { return width * height; }
  double scale() const { return width > height ? width : height; }
  bool operator==(const BoxSpec&) const = default;
};

/// A packing decision problem: pack `rects` into `box`, optionally with
/// 90 degree rotations.
struct Instance {
  std::vector<RectSpec> rects;
  BoxSpec box;
  bool rotation_allowed = true;

  std::size_t size() const { return rects.size(); }
  double area_sum() const;
  bool operator==(const Instance&) const = default;
};

/// Closed axis-aligned box occupied by one rectangle.
struct Placement {
  double x_lo = 0.0;
  double y_lo = 0.0;
  double x_hi = 0.0;
  double y_hi = 0.0;

  double dx() const { return x_hi - x_lo; }
  double dy() const { return y_hi - y_lo; }
  double cx() const { return 0.5 * (x_hi + x_lo); }
  double cy() const { return 0.5 * (y_hi + y_lo); }
  bool operator==(const Placement&) const = default;
};

/// Placements aligned index-for-index with Instance::rects.
struct Layout {
  std::vector<Placement> placements;

  std::size_t size() const { return placements.size(); }
  bool operator==(const Layout&) const = default;
};

/// Validating constructor; ids are assigned 1..N in order.
Instance make_instance(BoxSpec box,
                       const std::vector<std::pair<double, double>>& sides,
                       bool rotation_allowed = true);

/// Throws InputError unless the instance satisfies every domain invariant.
void validate(const Instance& inst);

/// Throws InputError when the layout does not have one placement per rect.
void check_cardinality(const Instance& inst, const Layout& layout);

Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);
Layout parse_layout(std::string_view text);
std::string serialize_layout(const Layout& layout);

Instance read_instance_file(const std::string& path);
Layout read_layout_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

enum class AreaStatus { exact, near, infeasible };

struct AreaVerdict {
  AreaStatus status = AreaStatus::exact;
  double delta = 0.0;  // area_sum - A*B
};

/// Default area tolerance: 1e-9 * A * B.
double default_area_tol(const BoxSpec& box);

/// Area gate. Gaps up to `near_fraction * A * B` are reported as near,
/// larger ones as infeasible.
AreaVerdict check_area(const Instance& inst, std::optional<double> tol_area = std::nullopt,
                       double near_fraction = 0.1);

std::string_view to_string(AreaStatus status);

/// Random perfect dissection of `box` by `n_cuts` recursive guillotine cuts.
std::pair<Instance, Layout> gen_guillotine(std::uint64_t seed, int n_cuts, BoxSpec box);

/// Rectangles (1/n, 1/(n+1)) for n = 1..n_rects in the unit square.
Instance harmonic_prefix(int n_rects);

}  // namespace rectpack
