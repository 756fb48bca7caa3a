#include "rectpack/moment_system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rectpack {

std::string_view to_string(Mode mode) {
  return mode == Mode::rotatable ? "rotatable" : "fixed";
}

Mode parse_mode(std::string_view text) {
  if (text == "fixed" || text == "fixed_orientation") return Mode::fixed_orientation;
  if (text == "rotatable") return Mode::rotatable;
  throw InputError("unknown mode '" + std::string(text) + "'");
}

double ResidualVector::moment_max_abs() const {
  double m = 0.0;
  for (double v : moment_part) m = std::max(m, std::abs(v));
  return m;
}

double ResidualVector::max_abs() const {
  double m = moment_max_abs();
  for (double v : constraint_part) m = std::max(m, std::abs(v));
  return m;
}

Eigen::VectorXd ResidualVector::stacked() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(moment_part.size() + constraint_part.size()));
  Eigen::Index i = 0;
  for (double v : moment_part) out[i++] = v;
  for (double v : constraint_part) out[i++] = v;
  return out;
}

namespace {

// powers[k] = v^k for k = 0..smax, by repeated multiplication.
void fill_powers(double v, int smax, std::vector<double>& powers) {
  powers.resize(static_cast<std::size_t>(smax) + 1);
  powers[0] = 1.0;
  for (int k = 1; k <= smax; ++k) powers[k] = powers[k - 1] * v;
}

}  // namespace

MomentSystem::MomentSystem(Instance inst, int smax, Mode mode)
    : inst_(std::move(inst)), smax_(smax), mode_(mode) {
  validate(inst_);
  if (smax_ < 1) throw std::invalid_argument("smax must be >= 1");
  if (mode_ == Mode::rotatable && !inst_.rotation_allowed) {
    throw std::invalid_argument("rotatable mode requires an instance that allows rotation");
  }
  scale_ = inst_.box.scale();
  box_w_ = inst_.box.width / scale_;
  box_h_ = inst_.box.height / scale_;
  for (const auto& r : inst_.rects) {
    widths_.push_back(r.width / scale_);
    heights_.push_back(r.height / scale_);
  }

  std::vector<double> pw;
  std::vector<double> ph;
  fill_powers(box_w_, smax_, pw);
  fill_powers(box_h_, smax_, ph);
  for (int s1 = 1; s1 <= smax_; ++s1) {
    for (int s2 = 1; s2 <= smax_; ++s2) {
      equations_.push_back({s1, s2});
      rhs_.push_back(pw[s1] * ph[s2]);
    }
  }
}

int MomentSystem::default_smax(const Instance& inst, Mode mode) {
  const int vars = (mode == Mode::rotatable ? 4 : 2) * static_cast<int>(inst.rects.size());
  const int root = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(vars))));
  return std::max(3, root + 1);
}

void MomentSystem::check_vars(const Eigen::VectorXd& vars) const {
  if (vars.size() != var_count()) {
    throw std::invalid_argument("expected " + std::to_string(var_count()) + " variables, got " +
                                std::to_string(vars.size()));
  }
  if (!vars.allFinite()) throw std::domain_error("non-finite variable");
}

MomentSystem::Corners MomentSystem::corners(const Eigen::VectorXd& vars, int n) const {
  if (mode_ == Mode::rotatable) {
    return {vars[4 * n], vars[4 * n + 1], vars[4 * n + 2], vars[4 * n + 3]};
  }
  const double x = vars[2 * n];
  const double y = vars[2 * n + 1];
  return {x, y, x + widths_[n], y + heights_[n]};
}

ResidualVector MomentSystem::residual(const Eigen::VectorXd& vars) const {
  check_vars(vars);
  const auto s = static_cast<std::size_t>(smax_);
  std::vector<double> sums(s * s, 0.0);
  std::vector<double> plo, phi, qlo, qhi, dx(s + 1), dy(s + 1);

  ResidualVector out;
  for (int n = 0; n < rect_count(); ++n) {
    const Corners c = corners(vars, n);
    fill_powers(c.x_lo, smax_, plo);
    fill_powers(c.x_hi, smax_, phi);
    fill_powers(c.y_lo, smax_, qlo);
    fill_powers(c.y_hi, smax_, qhi);
    for (std::size_t k = 1; k <= s; ++k) {
      dx[k] = phi[k] - plo[k];
      dy[k] = qhi[k] - qlo[k];
    }
    for (std::size_t a = 1; a <= s; ++a) {
      for (std::size_t b = 1; b <= s; ++b) sums[(a - 1) * s + (b - 1)] += dx[a] * dy[b];
    }
    if (mode_ == Mode::rotatable) {
      const double ex = c.x_hi - c.x_lo;
      const double ey = c.y_hi - c.y_lo;
      out.constraint_part.push_back(ex + ey - widths_[n] - heights_[n]);
      out.constraint_part.push_back(ex * ey - widths_[n] * heights_[n]);
    }
  }

  out.moment_part.resize(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) out.moment_part[i] = sums[i] / rhs_[i] - 1.0;
  return out;
}

Eigen::MatrixXd MomentSystem::jacobian(const Eigen::VectorXd& vars) const {
  check_vars(vars);
  const int s = smax_;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(row_count(), var_count());
  std::vector<double> plo, phi, qlo, qhi, dx(s + 1), dy(s + 1);

  for (int n = 0; n < rect_count(); ++n) {
    const Corners c = corners(vars, n);
    fill_powers(c.x_lo, s, plo);
    fill_powers(c.x_hi, s, phi);
    fill_powers(c.y_lo, s, qlo);
    fill_powers(c.y_hi, s, qhi);
    for (int k = 1; k <= s; ++k) {
      dx[k] = phi[k] - plo[k];
      dy[k] = qhi[k] - qlo[k];
    }

    for (int a = 1; a <= s; ++a) {
      for (int b = 1; b <= s; ++b) {
        const int row = (a - 1) * s + (b - 1);
        const double inv = 1.0 / rhs_[row];
        // d/dv (v^k) = k v^(k-1)
        const double dxhi = a * phi[a - 1] * dy[b] * inv;
        const double dxlo = -a * plo[a - 1] * dy[b] * inv;
        const double dyhi = b * qhi[b - 1] * dx[a] * inv;
        const double dylo = -b * qlo[b - 1] * dx[a] * inv;
        if (mode_ == Mode::rotatable) {
          jac(row, 4 * n) = dxlo;
          jac(row, 4 * n + 1) = dylo;
          jac(row, 4 * n + 2) = dxhi;
          jac(row, 4 * n + 3) = dyhi;
        } else {
          // x_hi = x_lo + w moves with x_lo.
          jac(row, 2 * n) = dxlo + dxhi;
          jac(row, 2 * n + 1) = dylo + dyhi;
        }
      }
    }

    if (mode_ == Mode::rotatable) {
      const int sum_row = equation_count() + 2 * n;
      const int prod_row = sum_row + 1;
      const double ex = c.x_hi - c.x_lo;
      const double ey = c.y_hi - c.y_lo;
      jac(sum_row, 4 * n) = -1.0;
      jac(sum_row, 4 * n + 1) = -1.0;
      jac(sum_row, 4 * n + 2) = 1.0;
      jac(sum_row, 4 * n + 3) = 1.0;
      jac(prod_row, 4 * n) = -ey;
      jac(prod_row, 4 * n + 1) = -ex;
      jac(prod_row, 4 * n + 2) = ey;
      jac(prod_row, 4 * n + 3) = ex;
    }
  }
  return jac;
}

Eigen::VectorXd MomentSystem::layout_to_vars(const Layout& layout) const {
  if (static_cast<int>(layout.size()) != rect_count()) {
    throw std::invalid_argument("layout cardinality does not match the system");
  }
  Eigen::VectorXd vars(var_count());
  for (int n = 0; n < rect_count(); ++n) {
    const auto& p = layout.placements[n];
    if (mode_ == Mode::rotatable) {
      vars[4 * n] = p.x_lo / scale_;
      vars[4 * n + 1] = p.y_lo / scale_;
      vars[4 * n + 2] = p.x_hi / scale_;
      vars[4 * n + 3] = p.y_hi / scale_;
    } else {
      vars[2 * n] = p.x_lo / scale_;
      vars[2 * n + 1] = p.y_lo / scale_;
    }
  }
  return vars;
}

Layout MomentSystem::vars_to_layout(const Eigen::VectorXd& vars) const {
  if (vars.size() != var_count()) throw std::invalid_argument("variable vector has wrong size");
  Layout layout;
  layout.placements.reserve(inst_.rects.size());
  for (int n = 0; n < rect_count(); ++n) {
    if (mode_ == Mode::rotatable) {
      layout.placements.push_back({vars[4 * n] * scale_, vars[4 * n + 1] * scale_,
                                   vars[4 * n + 2] * scale_, vars[4 * n + 3] * scale_});
    } else {
      const double x = vars[2 * n] * scale_;
      const double y = vars[2 * n + 1] * scale_;
      layout.placements.push_back({x, y, x + inst_.rects[n].width, y + inst_.rects[n].height});
    }
  }
  return layout;
}

}  // namespace rectpack
