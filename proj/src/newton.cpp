#include "vallab/newton.hpp"

#include <sstream>

#include "vallab/errors.hpp"

namespace vallab {

namespace {

LexValue slope(const PolyPoint& a, const PolyPoint& b) {
  return (b.v - a.v) / Rational(static_cast<long>(b.i - a.i));
}

}  // namespace

Polygon polygon(const std::vector<CoeffValue>& coeffs) {
  if (coeffs.empty()) throw PreconditionError("polygon of the empty polynomial");
  Polygon P;
  P.degree = coeffs.size() - 1;
  if (coeffs.back().kind != CoeffValue::Kind::known) {
    throw PreconditionError("leading coefficient must be nonzero at precision");
  }
  std::size_t first = 0;
  while (coeffs[first].kind == CoeffValue::Kind::zero) ++first;
  if (coeffs[first].kind == CoeffValue::Kind::at_least) {
    throw PrecisionError("low-order coefficient indeterminate at precision");
  }
  P.zero_order = first;
  for (std::size_t i = first; i < coeffs.size(); ++i) {
    if (coeffs[i].kind == CoeffValue::Kind::known) P.points.push_back({i, coeffs[i].v});
  }
  // Lower hull by monotone chain; collinear points are not vertices.
  for (const auto& pt : P.points) {
    while (P.hull.size() >= 2 &&
           slope(P.hull[P.hull.size() - 2], P.hull.back()) >= slope(P.hull.back(), pt)) {
      P.hull.pop_back();
    }
    P.hull.push_back(pt);
  }
  for (std::size_t k = 0; k + 1 < P.hull.size(); ++k) {
    P.segments.push_back({slope(P.hull[k], P.hull[k + 1]), P.hull[k + 1].i - P.hull[k].i});
  }
  // Coefficients known only up to a bound must lie on or above the hull.
  for (std::size_t i = first; i < coeffs.size(); ++i) {
    if (coeffs[i].kind != CoeffValue::Kind::at_least) continue;
    for (std::size_t k = 0; k + 1 < P.hull.size(); ++k) {
      const auto& a = P.hull[k];
      const auto& b = P.hull[k + 1];
      if (i < a.i || i > b.i) continue;
      const LexValue line = a.v + slope(a, b) * Rational(static_cast<long>(i - a.i));
      if (coeffs[i].v < line) {
        throw PrecisionError("coefficient " + std::to_string(i) +
                             " is indeterminate below the Newton polygon");
      }
    }
  }
  return P;
}

std::vector<std::pair<LexValue, std::size_t>> root_values(const Polygon& P) {
  std::vector<std::pair<LexValue, std::size_t>> out;
  for (const auto& s : P.segments) out.emplace_back(-s.slope, s.length);
  return out;
}

nlohmann::json to_json(const Polygon& P) {
  nlohmann::json j;
  j["degree"] = P.degree;
  j["zero_order"] = P.zero_order;
  auto verts = nlohmann::json::array();
  for (const auto& h : P.hull) verts.push_back({{"i", h.i}, {"v", h.v.to_string()}});
  j["vertices"] = verts;
  auto segs = nlohmann::json::array();
  for (const auto& s : P.segments) {
    segs.push_back({{"slope", s.slope.to_string()},
                    {"root_value", (-s.slope).to_string()},
                    {"length", s.length}});
  }
  j["segments"] = segs;
  return j;
}

std::string to_string(const Polygon& P) {
  std::ostringstream os;
  os << "vertices:";
  for (const auto& h : P.hull) os << " (" << h.i << ", " << h.v.to_string() << ")";
  os << "\nslope\troot_value\tlength\n";
  for (const auto& s : P.segments) {
    os << s.slope.to_string() << "\t" << (-s.slope).to_string() << "\t" << s.length << "\n";
  }
  return os.str();
}

}  // namespace vallab
