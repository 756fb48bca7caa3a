#include "rectpack/exact.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>

#include <json.hpp>

namespace rectpack {

using boost::multiprecision::cpp_int;
using nlohmann::json;

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

cpp_int parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InputError("non-rational input '" + std::string(whole) + "'");
  cpp_int v{std::string(s)};
  return negative ? cpp_int(-v) : v;
}

cpp_int pow10(unsigned k) {
  cpp_int v = 1;
  for (unsigned i = 0; i < k; ++i) v *= 10;
  return v;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    if (!exp_part.empty() && exp_part.front() == '+') exp_part.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_part.data(), exp_part.data() + exp_part.size(), exponent);
    if (ec != std::errc() || ptr != exp_part.data() + exp_part.size() || std::labs(exponent) > 4000) {
      throw InputError("non-rational input '" + std::string(whole) + "'");
    }
    s = s.substr(0, e);
  }
  std::string digits;
  long frac_digits = 0;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto int_part = s.substr(0, dot);
    const auto frac_part = s.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw InputError("non-rational input '" + std::string(whole) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    frac_digits = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) throw InputError("non-rational input '" + std::string(whole) + "'");
    digits = std::string(s);
  }
  // cpp_int reads a leading 0 as an octal prefix.
  const auto first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  Rational v{cpp_int(digits)};
  const long shift = exponent - frac_digits;
  if (shift > 0) v *= pow10(static_cast<unsigned>(shift));
  if (shift < 0) v /= pow10(static_cast<unsigned>(-shift));
  return negative ? Rational(-v) : v;
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(cpp_int(j.get<std::uint64_t>()));
    return Rational(cpp_int(j.get<std::int64_t>()));
  }
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw InputError("non-rational input: non-finite number");
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw InputError("non-rational input");
    return parse_rational(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
  }
  if (j.is_string()) return parse_rational(j.get_ref<const std::string&>());
  throw InputError("non-rational input: expected a number or \"p/q\" string");
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Rational min_q(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max_q(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw InputError("non-rational input: empty string");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const cpp_int num = parse_integer(text.substr(0, slash), text);
    const cpp_int den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw InputError("non-rational input '" + std::string(text) + "': zero denominator");
    return Rational(num, den);
  }
  return parse_decimal(text, text);
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw InputError("non-rational input: non-finite number");
  if (v == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(v, &exp);  // v = mant * 2^exp, 0.5 <= |mant| < 1
  const auto bits = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational out{cpp_int(bits)};
  cpp_int p2 = 1;
  p2 <<= static_cast<unsigned>(std::abs(exp));
  if (exp > 0) out *= p2;
  if (exp < 0) out /= p2;
  return out;
}

ExactInstance parse_exact_instance(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("box") || !doc["box"].is_array() || doc["box"].size() != 2 ||
      !doc.contains("rects") || !doc["rects"].is_array()) {
    throw InputError("instance needs \"box\": [A, B] and \"rects\": [[w, h], ...]");
  }
  ExactInstance inst;
  inst.box_width = rational_from_json(doc["box"][0]);
  inst.box_height = rational_from_json(doc["box"][1]);
  if (inst.box_width <= 0 || inst.box_height <= 0) throw InputError("box sides must be positive");
  if (doc.contains("rotation")) {
    if (!doc["rotation"].is_boolean()) throw InputError("\"rotation\" must be a boolean");
    inst.rotation_allowed = doc["rotation"].get<bool>();
  }
  const auto& rects = doc["rects"];
  const bool with_ids = !rects.empty() && rects[0].is_array() && rects[0].size() == 3;
  inst.rects.resize(rects.size());
  std::vector<bool> seen(rects.size(), false);
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const auto& r = rects[i];
    if (!r.is_array() || r.size() != (with_ids ? 3u : 2u)) throw InputError("malformed rect entry");
    std::size_t slot = i;
    if (with_ids) {
      if (!r[2].is_number_integer()) throw InputError("rect id must be an integer");
      const auto id = r[2].get<long long>();
      if (id < 1 || id > static_cast<long long>(rects.size()) || seen[id - 1]) {
        throw InputError("duplicate or out-of-range rect id");
      }
      seen[id - 1] = true;
      slot = static_cast<std::size_t>(id - 1);
    }
    Rational w = rational_from_json(r[0]);
    Rational l = rational_from_json(r[1]);
    if (w <= 0 || l <= 0) throw InputError("rect " + std::to_string(i + 1) + ": non-positive side length");
    inst.rects[slot] = {std::move(w), std::move(l)};
  }
  return inst;
}

ExactLayout parse_exact_layout(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("placements") || !doc["placements"].is_array()) {
    throw InputError("layout needs \"placements\": [[x_lo, y_lo, x_hi, y_hi], ...]");
  }
  ExactLayout layout;
  for (const auto& p : doc["placements"]) {
    if (!p.is_array() || p.size() != 4) throw InputError("each placement must have 4 coordinates");
    layout.placements.push_back(
        {rational_from_json(p[0]), rational_from_json(p[1]), rational_from_json(p[2]), rational_from_json(p[3])});
  }
  return layout;
}

ExactInstance to_exact(const Instance& inst) {
  ExactInstance out;
  out.box_width = rational_from_double(inst.box.width);
  out.box_height = rational_from_double(inst.box.height);
  out.rotation_allowed = inst.rotation_allowed;
  for (const auto& r : inst.rects) {
    out.rects.emplace_back(rational_from_double(r.width), rational_from_double(r.height));
  }
  return out;
}

ExactLayout to_exact(const Layout& layout) {
  ExactLayout out;
  for (const auto& p : layout.placements) {
    out.placements.push_back({rational_from_double(p.x_lo), rational_from_double(p.y_lo),
                              rational_from_double(p.x_hi), rational_from_double(p.y_hi)});
  }
  return out;
}

ExactReport verify_exact(const ExactInstance& inst, const ExactLayout& layout) {
  if (inst.rects.size() != layout.placements.size()) {
    throw InputError("layout has " + std::to_string(layout.placements.size()) + " placements but instance has " +
                     std::to_string(inst.rects.size()) + " rects");
  }
  ExactReport report;
  report.containment_ok = true;
  report.size_ok = true;
  report.overlap_ok = true;

  Rational covered = 0;
  const auto n = layout.placements.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = layout.placements[i];
    if (p.x_lo < 0 || p.y_lo < 0 || p.x_hi > inst.box_width || p.y_hi > inst.box_height) {
      report.containment_ok = false;
    }
    const Rational dx = p.x_hi - p.x_lo;
    const Rational dy = p.y_hi - p.y_lo;
    const auto& [w, l] = inst.rects[i];
    const bool upright = dx == w && dy == l;
    const bool turned = dx == l && dy == w;
    if (!(upright || (inst.rotation_allowed && turned))) report.size_ok = false;
    covered += dx * dy;
  }

  for (std::size_t i = 0; i < n && report.overlap_ok; ++i) {
    const auto& a = layout.placements[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& b = layout.placements[j];
      const bool x_open = min_q(a.x_hi, b.x_hi) > max_q(a.x_lo, b.x_lo);
      const bool y_open = min_q(a.y_hi, b.y_hi) > max_q(a.y_lo, b.y_lo);
      if (x_open && y_open) {
        report.overlap_ok = false;
        break;
      }
    }
  }

  report.area_ok = covered == inst.box_width * inst.box_height;
  report.pass = report.containment_ok && report.overlap_ok && report.size_ok && report.area_ok;
  return report;
}

}  // namespace rectpack
