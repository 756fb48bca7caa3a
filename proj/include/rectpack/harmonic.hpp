#pragma once

#include <array>
#include <string_view>

#include "rectpack/instance.hpp"

namespace rectpack {

/// Weighted center-of-mass identities that any perfect packing of the
/// rectangles (1/n, 1/(n+1)) into the unit square must satisfy, with
/// weight 1/(n(n+1)) = area of rect n:
///
///   x_first         sum w x_n            = 1/2
///   y_first         sum w y_n            = 1/2
///   xy_cross        sum w x_n y_n        = 1/4
///   sum_squares     sum w (x_n^2+y_n^2)  = 1/3 + pi^2/36
///   sum_of_sum_sq   sum w (x_n+y_n)^2    = 5/6 + pi^2/36
///   diff_sq         sum w (x_n-y_n)^2    = pi^2/36 - 1/6
enum class IdentityId { x_first, y_first, xy_cross, sum_squares, sum_of_sum_sq, diff_sq };

inline constexpr std::array<IdentityId, 6> kAllIdentities = {
    IdentityId::x_first,     IdentityId::y_first,       IdentityId::xy_cross,
    IdentityId::sum_squares, IdentityId::sum_of_sum_sq, IdentityId::diff_sq};

std::string_view to_string(IdentityId id);
IdentityId parse_identity(std::string_view text);

/// Closed-form right-hand side.
double rhs_constant(IdentityId id);

/// Right-hand side rebuilt from box integrals of the test function minus
/// the within-rectangle second-moment corrections
/// (1/12) * sum_n area_n * (dx_n^2 + dy_n^2), summed for n <= n_trunc.
/// With `extrapolate_tail` the remainder n > n_trunc is estimated by
/// 2 / (3 (n_trunc + 1)^3).
double rhs_derive(IdentityId id, long n_trunc, bool extrapolate_tail = true);

/// Checks sum_of_sum_sq = sum_squares + 2 xy_cross and
/// diff_sq = sum_squares - 2 xy_cross on the closed forms.
bool rhs_consistency(double tol = 1e-15);

struct IdentityEval {
  double lhs_partial = 0.0;
  double rhs_constant = 0.0;
  double covered_area = 0.0;  // sum of weights, 1 - 1/(N+1)
  long n = 0;

  double gap() const { return rhs_constant - lhs_partial; }
};

/// Partial left-hand side over the N placements of a harmonic_prefix(N)
/// layout. Throws InputError when a placement's sides are not
/// {1/n, 1/(n+1)} to 1e-9.
IdentityEval identity_partial(const Layout& layout, IdentityId id);

}  // namespace rectpack
