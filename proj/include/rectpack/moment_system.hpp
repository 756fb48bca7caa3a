#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rectpack/instance.hpp"

namespace rectpack {

enum class Mode {
  fixed_orientation,  // unknowns (x_lo, y_lo) per rect, sides substituted
  rotatable,          // unknowns (x_lo, y_lo, x_hi, y_hi) per rect plus side constraints
};

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

struct ExponentPair {
  int s1 = 1;
  int s2 = 1;
};

struct ResidualVector {
  std::vector<double> moment_part;      // one entry per ExponentPair, row-major in (s1, s2)
  std::vector<double> constraint_part;  // (sum, product) per rect in rotatable mode

  double moment_max_abs() const;
  double max_abs() const;
  Eigen::VectorXd stacked() const;
};

/// Truncated moment system for a packing instance.
///
/// For exponents 1 <= s1, s2 <= smax the equation
///
///   sum_n ((x_n^+)^s1 - (x_n^-)^s1) ((y_n^+)^s2 - (y_n^-)^s2) = A^s1 B^s2
///
/// holds for every perfect packing. Coordinates are divided by
/// max(A, B) and each equation by the right-hand side, so residual
/// entries are relative errors. In rotatable mode the two symmetric
/// constraints dx + dy = w + l and dx * dy = w * l are appended per rect.
class MomentSystem {
 public:
  MomentSystem(Instance inst, int smax, Mode mode);

  /// max(3, ceil(sqrt(var_count)) + 1).
  static int default_smax(const Instance& inst, Mode mode);

  const Instance& instance() const { return inst_; }
  int smax() const { return smax_; }
  Mode mode() const { return mode_; }
  double scale() const { return scale_; }
  const std::vector<ExponentPair>& equations() const { return equations_; }
  int equation_count() const { return static_cast<int>(equations_.size()); }
  int constraint_count() const { return mode_ == Mode::rotatable ? 2 * rect_count() : 0; }
  int row_count() const { return equation_count() + constraint_count(); }
  int var_count() const { return (mode_ == Mode::rotatable ? 4 : 2) * rect_count(); }
  int vars_per_rect() const { return mode_ == Mode::rotatable ? 4 : 2; }
  int rect_count() const { return static_cast<int>(inst_.rects.size()); }

  /// Box size in normalized units.
  double box_width() const { return box_w_; }
  double box_height() const { return box_h_; }
  /// Rect sides in normalized units.
  double rect_width(int n) const { return widths_[n]; }
  double rect_height(int n) const { return heights_[n]; }

  ResidualVector residual(const Eigen::VectorXd& vars) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& vars) const;

  Eigen::VectorXd layout_to_vars(const Layout& layout) const;
  Layout vars_to_layout(const Eigen::VectorXd& vars) const;

 private:
  struct Corners {
    double x_lo, y_lo, x_hi, y_hi;
  };

  void check_vars(const Eigen::VectorXd& vars) const;
  Corners corners(const Eigen::VectorXd& vars, int n) const;

  Instance inst_;
  int smax_;
  Mode mode_;
  double scale_;
  double box_w_;
  double box_h_;
  std::vector<double> widths_;
  std::vector<double> heights_;
  std::vector<ExponentPair> equations_;
  std::vector<double> rhs_;  // box_w^s1 * box_h^s2 per equation
};

}  // namespace rectpack
