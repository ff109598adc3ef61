#pragma once

// Newton polygons. Points are (i, v(c_i)) with c_0 the constant term; a
// segment of slope s and length l contributes l roots of value -s.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vallab/ogroup.hpp"

namespace vallab {

/// What is known about v(c_i).
struct CoeffValue {
  enum class Kind { known, zero, at_least };
  Kind kind = Kind::zero;
  LexValue v;  // value for known, lower bound for at_least

  static CoeffValue of(const LexValue& v) { return {Kind::known, v}; }
  static CoeffValue of(const Rational& v) { return {Kind::known, LexValue(v)}; }
  static CoeffValue exact_zero() { return {Kind::zero, LexValue()}; }
  static CoeffValue bounded(const LexValue& b) { return {Kind::at_least, b}; }
};

struct PolyPoint {
  std::size_t i;
  LexValue v;
};

struct Segment {
  LexValue slope;
  std::size_t length;
};

struct Polygon {
  std::vector<PolyPoint> points;
  std::vector<PolyPoint> hull;
  std::vector<Segment> segments;
  std::size_t degree = 0;
  std::size_t zero_order = 0;  // multiplicity of the root 0
};

// Throws PreconditionError if the leading coefficient is not known nonzero,
// PrecisionError if a coefficient known only up to a bound could change the hull.
Polygon polygon(const std::vector<CoeffValue>& coeffs);

// (value, multiplicity) per segment, values decreasing left to right.
std::vector<std::pair<LexValue, std::size_t>> root_values(const Polygon& P);

nlohmann::json to_json(const Polygon& P);
std::string to_string(const Polygon& P);

}  // namespace vallab
