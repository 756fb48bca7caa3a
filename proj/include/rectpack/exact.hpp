#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rectpack/instance.hpp"

namespace rectpack {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", "p", or a decimal literal such as "-0.125" or "3e-2".
/// Throws InputError on anything else.
Rational parse_rational(std::string_view text);

/// Exact value of a finite double (every double is a dyadic rational).
Rational rational_from_double(double v);

struct ExactInstance {
  std::vector<std::pair<Rational, Rational>> rects;  // (w, l)
  Rational box_width;
  Rational box_height;
  bool rotation_allowed = true;
};

struct ExactPlacement {
  Rational x_lo, y_lo, x_hi, y_hi;
};

struct ExactLayout {
  std::vector<ExactPlacement> placements;
};

/// Same document formats as parse_instance / parse_layout. JSON integers
/// and "p/q" strings are taken literally; JSON floats are read as the
/// shortest decimal that round-trips them.
ExactInstance parse_exact_instance(std::string_view text);
ExactLayout parse_exact_layout(std::string_view text);

ExactInstance to_exact(const Instance& inst);
ExactLayout to_exact(const Layout& layout);

struct ExactReport {
  bool pass = false;
  bool containment_ok = false;
  bool overlap_ok = false;
  bool size_ok = false;
  bool area_ok = false;

  explicit operator bool() const { return pass; }
};

/// verify_layout with tol = 0 over exact rationals. Touching boundaries
/// are legal; any positive-area interior intersection is not.
ExactReport verify_exact(const ExactInstance& inst, const ExactLayout& layout);

}  // namespace rectpack
