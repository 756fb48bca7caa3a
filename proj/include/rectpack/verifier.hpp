#pragma once

#include <vector>

#include "rectpack/instance.hpp"

namespace rectpack {

inline constexpr double kDefaultVerifyTol = 1e-7;

struct ContainmentViolation {
  int id = 0;
  double overhang = 0.0;
};

struct OverlapViolation {
  int id_a = 0;
  int id_b = 0;
  double area = 0.0;
};

struct SizeViolation {
  int id = 0;
  double sum_error = 0.0;      // |dx + dy - w - l|
  double product_error = 0.0;  // |dx * dy - w * l|
};

struct VerificationReport {
  bool pass = false;
  std::vector<ContainmentViolation> containment_violations;
  std::vector<OverlapViolation> overlap_violations;
  std::vector<SizeViolation> size_violations;
  double area_gap = 0.0;  // sum dx*dy - A*B
  double tol = kDefaultVerifyTol;
};

/// Floating-point check that `layout` is a perfect packing of `inst`.
///
/// Tolerances are relative to scale = max(A, B): containment and side
/// lengths to tol * scale, pairwise interior overlap area to
/// (tol * scale)^2, total area to tol * A * B. Touching edges never
/// count as overlap. When rotation is allowed the sides only need to
/// match as an unordered pair.
VerificationReport verify_layout(const Instance& inst, const Layout& layout,
                                 double tol = kDefaultVerifyTol);

/// Signed corner bookkeeping: +1 at bottom-left and top-right corners,
/// -1 at top-left and bottom-right. Points closer than tol * scale are
/// merged. True iff the only surviving charges are those of the box's own
/// four corners.
bool corner_cancellation(const Layout& layout, const BoxSpec& box, double tol = kDefaultVerifyTol);

/// Max |moment residual| of the layout's actual corners over all
/// exponent pairs up to smax. Side constraints are not included.
double moment_residual_of_layout(const Instance& inst, const Layout& layout, int smax);

}  // namespace rectpack
