#include "rectpack/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rectpack/random.hpp"

namespace rectpack {

std::string_view to_string(InitStrategy s) {
  switch (s) {
    case InitStrategy::uniform_random: return "uniform_random";
    case InitStrategy::shelf_greedy: return "shelf_greedy";
    case InitStrategy::user_layout: return "user_layout";
  }
  return "unknown";
}

InitStrategy parse_init_strategy(std::string_view text) {
  if (text == "uniform_random" || text == "random") return InitStrategy::uniform_random;
  if (text == "shelf_greedy" || text == "shelf") return InitStrategy::shelf_greedy;
  if (text == "user_layout" || text == "user") return InitStrategy::user_layout;
  throw InputError("unknown init strategy '" + std::string(text) + "'");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::residual_tol: return "residual_tol";
    case Termination::step_tol: return "step_tol";
    case Termination::max_iters: return "max_iters";
    case Termination::stalled: return "stalled";
    case Termination::non_finite: return "non_finite";
  }
  return "unknown";
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged_verified: return "converged_verified";
    case SolveStatus::converged_unverified: return "converged_unverified";
    case SolveStatus::exhausted: return "exhausted";
  }
  return "unknown";
}

void SolveConfig::validate() const {
  if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (!(residual_tol > 0.0) || !(step_tol > 0.0) || !(lm_lambda0 > 0.0) || !(verify_tol >= 0.0)) {
    throw std::invalid_argument("tolerances and lm_lambda0 must be positive");
  }
  if (polish_iters < 0) throw std::invalid_argument("polish_iters must be >= 0");
  if (init_strategy == InitStrategy::user_layout && !user_layout) {
    throw std::invalid_argument("user_layout strategy needs a layout");
  }
}

void project_to_domain(const MomentSystem& sys, Eigen::VectorXd& vars) {
  const double a = sys.box_width();
  const double b = sys.box_height();
  for (int n = 0; n < sys.rect_count(); ++n) {
    if (sys.mode() == Mode::fixed_orientation) {
      vars[2 * n] = std::clamp(vars[2 * n], 0.0, std::max(0.0, a - sys.rect_width(n)));
      vars[2 * n + 1] = std::clamp(vars[2 * n + 1], 0.0, std::max(0.0, b - sys.rect_height(n)));
    } else {
      for (int k = 0; k < 4; ++k) {
        const double hi = (k % 2 == 0) ? a : b;
        vars[4 * n + k] = std::clamp(vars[4 * n + k], 0.0, hi);
      }
      if (vars[4 * n] > vars[4 * n + 2]) std::swap(vars[4 * n], vars[4 * n + 2]);
      if (vars[4 * n + 1] > vars[4 * n + 3]) std::swap(vars[4 * n + 1], vars[4 * n + 3]);
    }
  }
}

namespace {

struct Eval {
  Eigen::VectorXd r;
  double norm = 0.0;
  double inf = 0.0;
};

Eval evaluate(const MomentSystem& sys, const Eigen::VectorXd& x) {
  Eval e;
  e.r = sys.residual(x).stacked();
  e.norm = e.r.norm();
  e.inf = e.r.size() > 0 ? e.r.cwiseAbs().maxCoeff() : 0.0;
  return e;
}

constexpr double kLambdaCeiling = 1e20;

}  // namespace

SingleSolveResult solve_single(const MomentSystem& sys, Eigen::VectorXd x0, const SolveConfig& cfg) {
  if (x0.size() != sys.var_count()) throw std::invalid_argument("start vector has wrong dimension");
  SingleSolveResult out;
  if (!x0.allFinite()) {
    out.vars = std::move(x0);
    out.termination = Termination::non_finite;
    out.residual_inf = std::numeric_limits<double>::infinity();
    return out;
  }

  Eigen::VectorXd x = std::move(x0);
  project_to_domain(sys, x);
  Eval cur = evaluate(sys, x);
  out.residual_history.push_back(cur.norm);
  double lambda = cfg.lm_lambda0;
  const auto n = static_cast<Eigen::Index>(x.size());

  // One damped trial from x; returns true when accepted.
  auto trial = [&](const Eigen::MatrixXd& jtj, const Eigen::VectorXd& jtr, double& step_size) -> int {
    Eigen::MatrixXd lhs = jtj;
    lhs.diagonal().array() += lambda;
    const Eigen::VectorXd delta = lhs.ldlt().solve(-jtr);
    if (!delta.allFinite()) return -1;
    Eigen::VectorXd next = x + delta;
    project_to_domain(sys, next);
    Eval e = evaluate(sys, next);
    if (!std::isfinite(e.norm)) return -1;
    step_size = n > 0 ? (next - x).cwiseAbs().maxCoeff() : 0.0;
    if (e.norm < cur.norm) {
      x = std::move(next);
      cur = std::move(e);
      out.residual_history.push_back(cur.norm);
      return 1;
    }
    return 0;
  };

  bool done = false;
  if (cur.inf <= cfg.residual_tol) {
    out.termination = Termination::residual_tol;
    done = true;
  }
  while (!done && out.iterations < cfg.max_iters) {
    const Eigen::MatrixXd jac = sys.jacobian(x);
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * cur.r;
    while (out.iterations < cfg.max_iters) {
      ++out.iterations;
      double step = 0.0;
      const int verdict = trial(jtj, jtr, step);
      if (verdict < 0) {
        out.termination = Termination::non_finite;
        done = true;
        break;
      }
      if (verdict == 1) {
        lambda *= 0.5;
        if (cur.inf <= cfg.residual_tol) {
          out.termination = Termination::residual_tol;
          done = true;
        } else if (step <= cfg.step_tol) {
          out.termination = Termination::step_tol;
          done = true;
        }
        break;
      }
      lambda *= 4.0;
      if (step <= cfg.step_tol) {
        out.termination = Termination::step_tol;
        done = true;
        break;
      }
      if (lambda > kLambdaCeiling) {
        out.termination = Termination::stalled;
        done = true;
        break;
      }
    }
  }

  if (out.termination == Termination::residual_tol) {
    for (int k = 0; k < cfg.polish_iters; ++k) {
      const Eigen::MatrixXd jac = sys.jacobian(x);
      double step = 0.0;
      if (trial(jac.transpose() * jac, jac.transpose() * cur.r, step) != 1) break;
      lambda *= 0.5;
    }
  }

  out.vars = std::move(x);
  out.residual_inf = out.termination == Termination::non_finite ? std::numeric_limits<double>::infinity() : cur.inf;
  return out;
}

Mode default_mode(const Instance& inst) {
  return inst.rotation_allowed ? Mode::rotatable : Mode::fixed_orientation;
}

Layout init_shelf_greedy(const Instance& inst) {
  std::vector<std::size_t> order(inst.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return inst.rects[a].height > inst.rects[b].height; });

  const double A = inst.box.width;
  const double B = inst.box.height;
  Layout layout;
  layout.placements.resize(inst.size());
  double x = 0.0;
  double shelf_y = 0.0;
  double shelf_h = 0.0;
  for (std::size_t idx : order) {
    const auto& r = inst.rects[idx];
    if (x > 0.0 && x + r.width > A) {
      shelf_y += shelf_h;
      x = 0.0;
      shelf_h = 0.0;
    }
    const double px = std::min(x, std::max(0.0, A - r.width));
    const double py = std::min(shelf_y, std::max(0.0, B - r.height));
    layout.placements[idx] = {px, py, px + r.width, py + r.height};
    x += r.width;
    shelf_h = std::max(shelf_h, r.height);
  }
  return layout;
}

Eigen::VectorXd random_start(const MomentSystem& sys, std::uint64_t seed, int start_index) {
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(start_index)));
  const double a = sys.box_width();
  const double b = sys.box_height();
  Eigen::VectorXd x(sys.var_count());
  for (int n = 0; n < sys.rect_count(); ++n) {
    if (sys.mode() == Mode::fixed_orientation) {
      x[2 * n] = rng.uniform(0.0, std::max(0.0, a - sys.rect_width(n)));
      x[2 * n + 1] = rng.uniform(0.0, std::max(0.0, b - sys.rect_height(n)));
    } else {
      double w = sys.rect_width(n);
      double h = sys.rect_height(n);
      if (rng.coin()) std::swap(w, h);
      const double x_lo = rng.uniform(0.0, std::max(0.0, a - w));
      const double y_lo = rng.uniform(0.0, std::max(0.0, b - h));
      x[4 * n] = x_lo;
      x[4 * n + 1] = y_lo;
      x[4 * n + 2] = x_lo + w;
      x[4 * n + 3] = y_lo + h;
    }
  }
  project_to_domain(sys, x);
  return x;
}

SolveReport solve_multistart(const Instance& inst, const SolveConfig& cfg, int smax, Mode mode) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  validate(inst);

  SolveReport report;
  report.mode = mode;
  report.smax = smax > 0 ? smax : MomentSystem::default_smax(inst, mode);

  const AreaVerdict area = check_area(inst);
  if (area.status != AreaStatus::exact) {
    report.status = SolveStatus::exhausted;
    report.reason = "area";
    report.final_residual_inf = std::abs(area.delta) / inst.box.area();
    report.wall_time = std::chrono::steady_clock::now() - t0;
    return report;
  }

  const MomentSystem sys(inst, report.smax, mode);
  bool have_converged = false;
  double best_residual = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_vars;

  for (int k = 0; k < cfg.restarts; ++k) {
    Eigen::VectorXd x0;
    if (k == 0 && cfg.init_strategy == InitStrategy::shelf_greedy) {
      x0 = sys.layout_to_vars(init_shelf_greedy(inst));
    } else if (k == 0 && cfg.init_strategy == InitStrategy::user_layout) {
      check_cardinality(inst, *cfg.user_layout);
      x0 = sys.layout_to_vars(*cfg.user_layout);
    } else {
      x0 = random_start(sys, cfg.seed, k);
    }

    const SingleSolveResult single = solve_single(sys, std::move(x0), cfg);
    report.iterations_total += single.iterations;
    report.starts_run = k + 1;

    const bool converged = single.converged(cfg.residual_tol);
    if (converged) {
      Layout candidate = sys.vars_to_layout(single.vars);
      VerificationReport verdict = verify_layout(inst, candidate, cfg.verify_tol);
      if (verdict.pass) {
        report.status = SolveStatus::converged_verified;
        report.reason = "verified";
        report.best_layout = std::move(candidate);
        report.final_residual_inf = single.residual_inf;
        report.start_index = k;
        report.verification = std::move(verdict);
        report.wall_time = std::chrono::steady_clock::now() - t0;
        return report;
      }
    }
    // Best so far: converged candidates outrank unconverged ones, then
    // lower residual, then lower start index.
    const bool better = (converged && !have_converged) ||
                        (converged == have_converged && single.residual_inf < best_residual);
    if (better) {
      have_converged = have_converged || converged;
      best_residual = single.residual_inf;
      best_vars = single.vars;
      report.start_index = k;
    }
  }

  report.status = have_converged ? SolveStatus::converged_unverified : SolveStatus::exhausted;
  report.reason = have_converged ? "unverified" : "no_convergence";
  report.final_residual_inf = best_residual;
  if (best_vars.size() == sys.var_count()) {
    report.best_layout = sys.vars_to_layout(best_vars);
    report.verification = verify_layout(inst, report.best_layout, cfg.verify_tol);
  }
  report.wall_time = std::chrono::steady_clock::now() - t0;
  return report;
}

}  // namespace rectpack
