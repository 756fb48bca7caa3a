#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rectpack/instance.hpp"
#include "rectpack/moment_system.hpp"
#include "rectpack/verifier.hpp"

namespace rectpack {

enum class InitStrategy {
  uniform_random,  // every start random
  shelf_greedy,    // start 0 from init_shelf_greedy, the rest random
  user_layout,     // start 0 from SolveConfig::user_layout, the rest random
};

std::string_view to_string(InitStrategy s);
InitStrategy parse_init_strategy(std::string_view text);

struct SolveConfig {
  int max_iters = 500;
  int restarts = 64;
  std::uint64_t seed = 0;
  double residual_tol = 1e-10;
  double step_tol = 1e-12;
  double lm_lambda0 = 1e-3;
  InitStrategy init_strategy = InitStrategy::shelf_greedy;
  std::optional<Layout> user_layout;
  /// Extra damped steps taken after residual_tol is met, each kept only if
  /// it lowers the residual. Converged iterates land near 1e-10 while the
  /// overlap test works at (tol * scale)^2, so a few more quadratic steps
  /// are needed before verification.
  int polish_iters = 8;
  double verify_tol = kDefaultVerifyTol;

  /// Throws std::invalid_argument on non-positive tolerances or restarts < 1.
  void validate() const;
};

enum class Termination { residual_tol, step_tol, max_iters, stalled, non_finite };

std::string_view to_string(Termination t);

struct SingleSolveResult {
  Eigen::VectorXd vars;
  std::vector<double> residual_history;  // 2-norm after each accepted step, starting at x0
  double residual_inf = 0.0;
  int iterations = 0;
  Termination termination = Termination::max_iters;

  bool converged(double tol) const { return termination != Termination::non_finite && residual_inf <= tol; }
};

/// Projected Levenberg-Marquardt from x0.
///
/// Each trial solves (J^T J + lambda I) delta = -J^T r, projects x + delta
/// onto the box domain and accepts it iff the residual 2-norm drops
/// (lambda halves) or rejects it (lambda quadruples).
SingleSolveResult solve_single(const MomentSystem& sys, Eigen::VectorXd x0, const SolveConfig& cfg);

/// Clamp into the normalized box; in rotatable mode swaps lo/hi corners
/// that crossed.
void project_to_domain(const MomentSystem& sys, Eigen::VectorXd& vars);

enum class SolveStatus { converged_verified, converged_unverified, exhausted };

std::string_view to_string(SolveStatus s);

struct SolveReport {
  SolveStatus status = SolveStatus::exhausted;
  std::string reason;  // "verified", "area", "unverified", "no_convergence"
  Layout best_layout;
  double final_residual_inf = 0.0;  // normalized units
  long iterations_total = 0;
  int start_index = -1;
  int starts_run = 0;
  int smax = 0;
  Mode mode = Mode::fixed_orientation;
  std::optional<VerificationReport> verification;
  std::chrono::duration<double> wall_time{0.0};
};

/// Multi-start driver. Start k draws from a generator seeded by
/// (cfg.seed, k); starts are tried in index order and the first verified
/// candidate wins. smax <= 0 selects MomentSystem::default_smax.
SolveReport solve_multistart(const Instance& inst, const SolveConfig& cfg, int smax, Mode mode);

/// Mode used when none is requested: rotatable iff the instance allows it.
Mode default_mode(const Instance& inst);

/// Shelf heuristic: decreasing height, left to right, clamped into the box.
/// May overlap when the instance does not fit in shelves.
Layout init_shelf_greedy(const Instance& inst);

/// Random start for start index `start_index`.
Eigen::VectorXd random_start(const MomentSystem& sys, std::uint64_t seed, int start_index);

}  // namespace rectpack
