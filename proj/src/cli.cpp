#include "rectpack/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rectpack/exact.hpp"
#include "rectpack/harmonic.hpp"
#include "rectpack/instance.hpp"
#include "rectpack/oracle.hpp"
#include "rectpack/render.hpp"
#include "rectpack/solver.hpp"
#include "rectpack/verifier.hpp"

namespace rectpack {

using nlohmann::json;

namespace {

json layout_json(const Layout& layout) { return json::parse(serialize_layout(layout)); }
json instance_json(const Instance& inst) { return json::parse(serialize_instance(inst)); }

json verification_json(const VerificationReport& r) {
  json containment = json::array();
  for (const auto& v : r.containment_violations) containment.push_back({{"id", v.id}, {"overhang", v.overhang}});
  json overlap = json::array();
  for (const auto& v : r.overlap_violations) overlap.push_back({{"ids", {v.id_a, v.id_b}}, {"area", v.area}});
  json size = json::array();
  for (const auto& v : r.size_violations) {
    size.push_back({{"id", v.id}, {"sum_error", v.sum_error}, {"product_error", v.product_error}});
  }
  return {{"pass", r.pass},
          {"containment_violations", containment},
          {"overlap_violations", overlap},
          {"size_violations", size},
          {"area_gap", r.area_gap},
          {"tol", r.tol}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("PACK_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw InputError("");
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("PACK_SEED is not an unsigned integer: ") + env);
  }
}

std::string default_layout_path(const std::string& instance_path) {
  const std::string suffix = ".json";
  if (instance_path.size() > suffix.size() &&
      instance_path.compare(instance_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return instance_path.substr(0, instance_path.size() - suffix.size()) + ".layout.json";
  }
  return instance_path + ".layout.json";
}

struct GenOptions {
  std::string kind;
  std::uint64_t seed = 0;
  int cuts = 3;
  std::vector<double> box{1.0, 1.0};
  int n = 10;
  int max_box = 4;
  int max_side = 4;
  std::string out;
  std::string layout_out;
};

int cmd_gen(const GenOptions& o, std::ostream& out) {
  if (o.kind == "guillotine") {
    if (o.box.size() != 2) throw InputError("--box needs two values");
    auto [inst, layout] = gen_guillotine(seed_from_env(o.seed), o.cuts, {o.box[0], o.box[1]});
    if (!o.layout_out.empty()) write_text_file(o.layout_out, serialize_layout(layout));
    if (!o.out.empty()) {
      write_text_file(o.out, serialize_instance(inst));
      out << json{{"instance_path", o.out}, {"layout_path", o.layout_out}, {"rects", inst.size()}}.dump() << '\n';
    } else {
      out << json{{"instance", instance_json(inst)}, {"layout", layout_json(layout)}}.dump() << '\n';
    }
    return kExitOk;
  }
  if (o.kind == "harmonic") {
    const Instance inst = harmonic_prefix(o.n);
    if (!o.out.empty()) {
      write_text_file(o.out, serialize_instance(inst));
      out << json{{"instance_path", o.out}, {"rects", inst.size()}}.dump() << '\n';
    } else {
      out << serialize_instance(inst) << '\n';
    }
    return kExitOk;
  }
  if (o.kind == "family") {
    if (o.max_box < 1 || o.max_side < 1) throw InputError("--max-box and --max-side must be >= 1");
    if (o.max_box * o.max_box > kOracleCellBudget) throw InputError("--max-box exceeds the oracle cell budget");
    json instances = json::array();
    for (const auto& inst : enumerate_small_family(o.max_box, o.max_side)) instances.push_back(instance_json(inst));
    json doc = {{"count", instances.size()}, {"instances", instances}};
    if (!o.out.empty()) {
      write_text_file(o.out, doc.dump());
      out << json{{"instances_path", o.out}, {"count", instances.size()}}.dump() << '\n';
    } else {
      out << doc.dump() << '\n';
    }
    return kExitOk;
  }
  throw InputError("unknown generator '" + o.kind + "' (guillotine|harmonic|family)");
}

struct SolveOptions {
  std::string instance;
  int smax = 0;
  std::string mode = "auto";
  int restarts = SolveConfig{}.restarts;
  std::uint64_t seed = 0;
  double tol = SolveConfig{}.residual_tol;
  double step_tol = SolveConfig{}.step_tol;
  int max_iters = SolveConfig{}.max_iters;
  double lambda0 = SolveConfig{}.lm_lambda0;
  double verify_tol = kDefaultVerifyTol;
  std::string init = "shelf";
  std::string start;
  std::string out;
  bool timing = false;
  bool table = false;
};

int cmd_solve(const SolveOptions& o, std::ostream& out) {
  const Instance inst = read_instance_file(o.instance);
  SolveConfig cfg;
  cfg.restarts = o.restarts;
  cfg.seed = seed_from_env(o.seed);
  cfg.residual_tol = o.tol;
  cfg.step_tol = o.step_tol;
  cfg.max_iters = o.max_iters;
  cfg.lm_lambda0 = o.lambda0;
  cfg.verify_tol = o.verify_tol;
  cfg.init_strategy = parse_init_strategy(o.init);
  if (!o.start.empty()) {
    cfg.user_layout = read_layout_file(o.start);
    check_cardinality(inst, *cfg.user_layout);
  }
  const Mode mode = o.mode == "auto" ? default_mode(inst) : parse_mode(o.mode);
  if (mode == Mode::rotatable && !inst.rotation_allowed) {
    throw InputError("rotatable mode requested but the instance forbids rotation");
  }

  const SolveReport report = solve_multistart(inst, cfg, o.smax, mode);
  std::string layout_path;
  if (report.status == SolveStatus::converged_verified) {
    layout_path = o.out.empty() ? default_layout_path(o.instance) : o.out;
    write_text_file(layout_path, serialize_layout(report.best_layout));
  }

  if (o.table) {
    out << "status      " << to_string(report.status) << " (" << report.reason << ")\n"
        << "mode        " << to_string(report.mode) << ", smax " << report.smax << '\n'
        << "start       " << report.start_index << " of " << report.starts_run << " run\n"
        << "iterations  " << report.iterations_total << '\n'
        << "residual    " << std::scientific << std::setprecision(3) << report.final_residual_inf << '\n';
    if (!layout_path.empty()) out << "layout      " << layout_path << '\n';
  } else {
    json doc = {{"status", to_string(report.status)},
                {"reason", report.reason},
                {"mode", to_string(report.mode)},
                {"smax", report.smax},
                {"start_index", report.start_index},
                {"starts_run", report.starts_run},
                {"iterations_total", report.iterations_total},
                {"final_residual_inf", report.final_residual_inf},
                {"layout", layout_json(report.best_layout)},
                {"layout_path", layout_path.empty() ? json(nullptr) : json(layout_path)}};
    if (report.verification) doc["verification"] = verification_json(*report.verification);
    if (o.timing) doc["wall_time_s"] = report.wall_time.count();
    out << doc.dump() << '\n';
  }
  return report.status == SolveStatus::converged_verified ? kExitOk : kExitNegative;
}

struct VerifyOptions {
  std::string instance;
  std::string layout;
  bool exact = false;
  double tol = kDefaultVerifyTol;
  int smax = 8;
  bool table = false;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  if (o.exact) {
    const ExactInstance inst = parse_exact_instance(read_file(o.instance));
    const ExactLayout layout = parse_exact_layout(read_file(o.layout));
    const ExactReport r = verify_exact(inst, layout);
    out << json{{"exact", true},
                {"pass", r.pass},
                {"containment_ok", r.containment_ok},
                {"overlap_ok", r.overlap_ok},
                {"size_ok", r.size_ok},
                {"area_ok", r.area_ok}}
               .dump()
        << '\n';
    return r.pass ? kExitOk : kExitNegative;
  }

  const Instance inst = read_instance_file(o.instance);
  const Layout layout = read_layout_file(o.layout);
  check_cardinality(inst, layout);
  if (o.smax < 1) throw InputError("--smax must be >= 1");
  const VerificationReport r = verify_layout(inst, layout, o.tol);
  const bool corners = corner_cancellation(layout, inst.box, o.tol);
  const double moment = moment_residual_of_layout(inst, layout, o.smax);

  if (o.table) {
    out << "pass                 " << (r.pass ? "yes" : "no") << '\n'
        << "containment issues   " << r.containment_violations.size() << '\n'
        << "overlapping pairs    " << r.overlap_violations.size() << '\n'
        << "size mismatches      " << r.size_violations.size() << '\n'
        << "area gap             " << std::scientific << std::setprecision(3) << r.area_gap << '\n'
        << "corner cancellation  " << (corners ? "yes" : "no") << '\n'
        << "max moment residual  " << moment << " (smax " << o.smax << ")\n";
    for (const auto& v : r.overlap_violations) {
      out << "  overlap " << v.id_a << " x " << v.id_b << " area " << v.area << '\n';
    }
  } else {
    json doc = verification_json(r);
    doc["corner_cancellation"] = corners;
    doc["max_moment_residual"] = moment;
    doc["smax"] = o.smax;
    out << doc.dump() << '\n';
  }
  return r.pass ? kExitOk : kExitNegative;
}

int cmd_identities(long n_trunc, bool table, std::ostream& out) {
  if (n_trunc < 1) throw InputError("--n-trunc must be >= 1");
  json rows = json::array();
  bool all_close = true;
  if (table) out << std::left << std::setw(15) << "id" << std::setw(22) << "closed_form" << std::setw(22) << "derived"
                 << "abs_diff\n";
  for (IdentityId id : kAllIdentities) {
    const double closed = rhs_constant(id);
    const double derived = rhs_derive(id, n_trunc);
    const double diff = std::abs(closed - derived);
    all_close = all_close && diff <= 1e-6;
    if (table) {
      out << std::left << std::setw(15) << to_string(id) << std::setprecision(16) << std::setw(22) << closed
          << std::setw(22) << derived << std::scientific << std::setprecision(3) << diff << std::defaultfloat << '\n';
    }
    rows.push_back({{"id", to_string(id)}, {"closed_form", closed}, {"derived", derived}, {"abs_diff", diff}});
  }
  const bool consistent = rhs_consistency();
  if (table) {
    out << "consistency " << (consistent ? "ok" : "FAILED") << '\n';
  } else {
    out << json{{"n_trunc", n_trunc}, {"identities", rows}, {"consistent", consistent}}.dump() << '\n';
  }
  return consistent && all_close ? kExitOk : kExitNegative;
}

int cmd_render(const std::string& inst_path, const std::string& layout_path, const std::string& svg_path,
               double px, bool no_labels, std::ostream& out) {
  const Instance inst = read_instance_file(inst_path);
  const Layout layout = read_layout_file(layout_path);
  check_cardinality(inst, layout);
  if (!(px > 0.0)) throw InputError("--px must be positive");
  RenderOptions opts;
  opts.px_per_unit = px;
  opts.labels = !no_labels;
  write_text_file(svg_path, render_svg(inst, layout, opts));
  out << json{{"svg_path", svg_path}, {"rects", layout.size()}}.dump() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rectangle packing through truncated polynomial moment systems", "rectpack"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate instances (guillotine | harmonic | family)");
  gen_cmd->add_option("kind", gen.kind, "guillotine, harmonic or family")->required();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed (PACK_SEED overrides)");
  gen_cmd->add_option("--cuts", gen.cuts, "Number of guillotine cuts");
  gen_cmd->add_option("--box", gen.box, "Box sides A B")->expected(2);
  gen_cmd->add_option("--n", gen.n, "Harmonic prefix length");
  gen_cmd->add_option("--max-box", gen.max_box, "Largest box side for the family");
  gen_cmd->add_option("--max-side", gen.max_side, "Largest rect side for the family");
  gen_cmd->add_option("-o,--out", gen.out, "Instance output path (stdout when absent)");
  gen_cmd->add_option("--layout-out", gen.layout_out, "Layout output path (guillotine)");

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Search for a perfect packing");
  solve_cmd->add_option("instance", solve.instance, "Instance JSON")->required();
  solve_cmd->add_option("--smax", solve.smax, "Truncation order (0 = automatic)");
  solve_cmd->add_option("--mode", solve.mode, "auto, fixed or rotatable");
  solve_cmd->add_option("--restarts", solve.restarts, "Number of starts");
  solve_cmd->add_option("--seed", solve.seed, "Seed (PACK_SEED overrides)");
  solve_cmd->add_option("--tol", solve.tol, "Residual tolerance (normalized units)");
  solve_cmd->add_option("--step-tol", solve.step_tol, "Step tolerance");
  solve_cmd->add_option("--max-iters", solve.max_iters, "Iteration cap per start");
  solve_cmd->add_option("--lambda0", solve.lambda0, "Initial damping");
  solve_cmd->add_option("--verify-tol", solve.verify_tol, "Verifier tolerance");
  solve_cmd->add_option("--init", solve.init, "shelf, random or user");
  solve_cmd->add_option("--start", solve.start, "Layout for --init user");
  solve_cmd->add_option("-o,--out", solve.out, "Where to write a verified layout");
  solve_cmd->add_flag("--timing", solve.timing, "Include wall time in the report");
  solve_cmd->add_flag("--table", solve.table, "Human-readable output");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a layout against an instance");
  verify_cmd->add_option("instance", verify.instance, "Instance JSON")->required();
  verify_cmd->add_option("layout", verify.layout, "Layout JSON")->required();
  verify_cmd->add_flag("--exact", verify.exact, "Exact rational arithmetic");
  verify_cmd->add_option("--tol", verify.tol, "Relative tolerance");
  verify_cmd->add_option("--smax", verify.smax, "Truncation order for the moment residual");
  verify_cmd->add_flag("--table", verify.table, "Human-readable output");

  long n_trunc = 1000000;
  bool ident_table = false;
  auto* ident_cmd = app.add_subcommand("identities", "Harmonic-family moment identities");
  ident_cmd->add_option("--n-trunc", n_trunc, "Series truncation");
  ident_cmd->add_flag("--table", ident_table, "Human-readable output");

  std::string render_inst, render_layout, render_svg_path;
  double render_px = 100.0;
  bool render_no_labels = false;
  auto* render_cmd = app.add_subcommand("render", "Draw a layout as SVG");
  render_cmd->add_option("instance", render_inst, "Instance JSON")->required();
  render_cmd->add_option("layout", render_layout, "Layout JSON")->required();
  render_cmd->add_option("svg", render_svg_path, "Output SVG path")->required();
  render_cmd->add_option("--px", render_px, "Pixels per length unit");
  render_cmd->add_flag("--no-labels", render_no_labels, "Omit id labels");

  std::vector<const char*> argv{"rectpack"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*solve_cmd) return cmd_solve(solve, out);
    if (*verify_cmd) return cmd_verify(verify, out);
    if (*ident_cmd) return cmd_identities(n_trunc, ident_table, out);
    if (*render_cmd) {
      return cmd_render(render_inst, render_layout, render_svg_path, render_px, render_no_labels, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace rectpack
