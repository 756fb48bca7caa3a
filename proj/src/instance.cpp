#include "rectpack/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rectpack/random.hpp"

namespace rectpack {

using nlohmann::json;

double Instance::area_sum() const {
  double sum = 0.0;
  for (const auto& r : rects) sum += r.area();
  return sum;
}

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// Accepts a JSON number or a "p/q" / "p" string.
double number_from_json(const json& j, const char* what) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw InputError(std::string("non-finite ") + what);
    return v;
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const auto slash = s.find('/');
    auto parse = [&](std::string_view part) {
      double v = 0.0;
      const auto* first = part.data();
      const auto* last = part.data() + part.size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) {
        throw InputError(std::string("malformed number '") + s + "' in " + what);
      }
      return v;
    };
    double v = 0.0;
    if (slash == std::string::npos) {
      v = parse(s);
    } else {
      const double num = parse(std::string_view(s).substr(0, slash));
      const double den = parse(std::string_view(s).substr(slash + 1));
      if (den == 0.0) throw InputError(std::string("zero denominator in ") + what);
      v = num / den;
    }
    if (!std::isfinite(v)) throw InputError(std::string("non-finite ") + what);
    return v;
  }
  throw InputError(std::string("expected a number for ") + what);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

void validate(const Instance& inst) {
  if (!positive_finite(inst.box.width) || !positive_finite(inst.box.height)) {
    throw InputError("box sides must be positive and finite");
  }
  for (std::size_t i = 0; i < inst.rects.size(); ++i) {
    const auto& r = inst.rects[i];
    if (!positive_finite(r.width) || !positive_finite(r.height)) {
      throw InputError("rect " + std::to_string(i + 1) + ": non-positive side length");
    }
    if (r.id != static_cast<int>(i) + 1) {
      throw InputError("rect ids must be contiguous from 1");
    }
  }
}

Instance make_instance(BoxSpec box, const std::vector<std::pair<double, double>>& sides,
                       bool rotation_allowed) {
  Instance inst;
  inst.box = box;
  inst.rotation_allowed = rotation_allowed;
  inst.rects.reserve(sides.size());
  int id = 1;
  for (const auto& [w, h] : sides) inst.rects.push_back({w, h, id++});
  validate(inst);
  return inst;
}

void check_cardinality(const Instance& inst, const Layout& layout) {
  if (inst.size() != layout.size()) {
    throw InputError("layout has " + std::to_string(layout.size()) + " placements but instance has " +
                     std::to_string(inst.size()) + " rects");
  }
}

Instance parse_instance(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw InputError("instance must be a JSON object");
  if (!doc.contains("box") || !doc["box"].is_array() || doc["box"].size() != 2) {
    throw InputError("instance needs \"box\": [A, B]");
  }
  if (!doc.contains("rects") || !doc["rects"].is_array()) {
    throw InputError("instance needs \"rects\": [[w, h], ...]");
  }

  Instance inst;
  inst.box = {number_from_json(doc["box"][0], "box"), number_from_json(doc["box"][1], "box")};
  if (doc.contains("rotation")) {
    if (!doc["rotation"].is_boolean()) throw InputError("\"rotation\" must be a boolean");
    inst.rotation_allowed = doc["rotation"].get<bool>();
  }

  // Optional third entry is an explicit id; either all rects carry one or none.
  const auto& rects = doc["rects"];
  std::size_t with_id = 0;
  for (const auto& r : rects) {
    if (!r.is_array() || (r.size() != 2 && r.size() != 3)) {
      throw InputError("each rect must be [w, h] or [w, h, id]");
    }
    if (r.size() == 3) ++with_id;
  }
  if (with_id != 0 && with_id != rects.size()) throw InputError("missing rect ids");

  std::vector<RectSpec> parsed(rects.size());
  std::vector<bool> seen(rects.size(), false);
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const auto& r = rects[i];
    RectSpec spec{number_from_json(r[0], "rect width"), number_from_json(r[1], "rect height"),
                  static_cast<int>(i) + 1};
    if (!positive_finite(spec.width) || !positive_finite(spec.height)) {
      throw InputError("rect " + std::to_string(i + 1) + ": non-positive side length");
    }
    if (with_id != 0) {
      if (!r[2].is_number_integer()) throw InputError("rect id must be an integer");
      const auto id = r[2].get<long long>();
      if (id < 1 || id > static_cast<long long>(rects.size())) {
        throw InputError("rect id " + std::to_string(id) + " out of range");
      }
      if (seen[id - 1]) throw InputError("duplicate rect id " + std::to_string(id));
      seen[id - 1] = true;
      spec.id = static_cast<int>(id);
    }
    parsed[spec.id - 1] = spec;
  }
  inst.rects = std::move(parsed);
  validate(inst);
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  json rects = json::array();
  for (const auto& r : inst.rects) rects.push_back({r.width, r.height});
  json doc = {{"box", {inst.box.width, inst.box.height}},
              {"rects", std::move(rects)},
              {"rotation", inst.rotation_allowed}};
  return doc.dump();
}

Layout parse_layout(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("placements") || !doc["placements"].is_array()) {
    throw InputError("layout needs \"placements\": [[x_lo, y_lo, x_hi, y_hi], ...]");
  }
  Layout layout;
  for (const auto& p : doc["placements"]) {
    if (!p.is_array() || p.size() != 4) throw InputError("each placement must have 4 coordinates");
    layout.placements.push_back({number_from_json(p[0], "x_lo"), number_from_json(p[1], "y_lo"),
                                 number_from_json(p[2], "x_hi"), number_from_json(p[3], "y_hi")});
  }
  return layout;
}

std::string serialize_layout(const Layout& layout) {
  json placements = json::array();
  for (const auto& p : layout.placements) placements.push_back({p.x_lo, p.y_lo, p.x_hi, p.y_hi});
  return json{{"placements", std::move(placements)}}.dump();
}

namespace {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Instance read_instance_file(const std::string& path) { return parse_instance(read_text_file(path)); }

Layout read_layout_file(const std::string& path) { return parse_layout(read_text_file(path)); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << text << '\n';
  if (!out) throw InputError("write failed: " + path);
}

double default_area_tol(const BoxSpec& box) { return 1e-9 * box.area(); }

AreaVerdict check_area(const Instance& inst, std::optional<double> tol_area, double near_fraction) {
  const double box_area = inst.box.area();
  const double tol = tol_area.value_or(default_area_tol(inst.box));
  const double delta = inst.area_sum() - box_area;
  if (std::abs(delta) <= tol) return {AreaStatus::exact, delta};
  if (std::abs(delta) <= near_fraction * box_area) return {AreaStatus::near, delta};
  return {AreaStatus::infeasible, delta};
}

std::string_view to_string(AreaStatus status) {
  switch (status) {
    case AreaStatus::exact: return "exact";
    case AreaStatus::near: return "near";
    case AreaStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

std::pair<Instance, Layout> gen_guillotine(std::uint64_t seed, int n_cuts, BoxSpec box) {
  if (n_cuts < 0) throw InputError("n_cuts must be non-negative");
  if (!positive_finite(box.width) || !positive_finite(box.height)) {
    throw InputError("box sides must be positive and finite");
  }
  Rng rng(derive_seed(seed, 0x6775696c6c6f74ULL));
  // Cuts sit on a dyadic grid far coarser than the box sides' ulp, so every
  // coordinate difference, and hence every stored side, is exact in double.
  // The 12-bit grid also keeps shortest decimals exact in JSON; finer grids
  // are fallbacks for very thin leaves.
  const int top = std::ilogb(box.scale());
  auto snap = [top](double at, double lo, double hi) {
    for (int bits : {12, 20, 30}) {
      const double grid = std::ldexp(1.0, top - bits);
      const double s = std::round(at / grid) * grid;
      if (s > lo && s < hi) return s;
    }
    return at;
  };
  std::vector<Placement> leaves{{0.0, 0.0, box.width, box.height}};
  leaves.reserve(static_cast<std::size_t>(n_cuts) + 1);

  for (int cut = 0; cut < n_cuts; ++cut) {
    // Pick a leaf with probability proportional to its area.
    double total = 0.0;
    for (const auto& p : leaves) total += p.dx() * p.dy();
    double pick = rng.uniform() * total;
    std::size_t idx = 0;
    for (; idx + 1 < leaves.size(); ++idx) {
      pick -= leaves[idx].dx() * leaves[idx].dy();
      if (pick < 0.0) break;
    }

    const Placement parent = leaves[idx];
    const double frac = rng.uniform(0.2, 0.8);
    // Long thin leaves are cut across their long side; near-square ones either way.
    bool vertical = rng.coin();
    if (parent.dx() > 1.25 * parent.dy()) vertical = true;
    if (parent.dy() > 1.25 * parent.dx()) vertical = false;

    Placement first = parent;
    Placement second = parent;
    if (vertical) {
      const double at = snap(parent.x_lo + frac * parent.dx(), parent.x_lo, parent.x_hi);
      first.x_hi = at;
      second.x_lo = at;
    } else {
      const double at = snap(parent.y_lo + frac * parent.dy(), parent.y_lo, parent.y_hi);
      first.y_hi = at;
      second.y_lo = at;
    }
    leaves[idx] = first;
    leaves.insert(leaves.begin() + static_cast<std::ptrdiff_t>(idx) + 1, second);
  }

  Instance inst;
  inst.box = box;
  inst.rotation_allowed = true;
  int id = 1;
  for (const auto& p : leaves) inst.rects.push_back({p.dx(), p.dy(), id++});
  validate(inst);
  return {std::move(inst), Layout{std::move(leaves)}};
}

Instance harmonic_prefix(int n_rects) {
  if (n_rects < 1) throw InputError("harmonic prefix needs N >= 1");
  Instance inst;
  inst.box = {1.0, 1.0};
  inst.rotation_allowed = true;
  for (int n = 1; n <= n_rects; ++n) {
    inst.rects.push_back({1.0 / n, 1.0 / (n + 1), n});
  }
  return inst;
}

}  // namespace rectpack
