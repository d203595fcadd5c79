#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "senlab/padic/poly.hpp"

namespace senlab::padic {

/// One input point (i, v(c_i)). `bound` marks a coefficient that is zero to
/// precision, in which case `valuation` is only a lower bound.
struct PolygonPoint {
  long index;
  mpq_class valuation;
  bool bound = false;
};

struct PolygonVertex {
  long index;
  mpq_class valuation;
  bool bound = false;
};

/// A segment of the polygon. `root_valuation` is the negated geometric slope:
/// `multiplicity` roots of the polynomial have exactly that valuation.
struct PolygonSlope {
  mpq_class root_valuation;
  long multiplicity;
};

/// Lower convex hull of the points (i, v(c_i)), left to right.
struct NewtonPolygon {
  std::vector<PolygonVertex> vertices;
  std::vector<PolygonSlope> slopes;
  /// False when some vertex rests on a lower bound, so the polygon is only
  /// an approximation from below at that vertex.
  bool certified = true;

  long degree() const;
  /// Each root valuation repeated by multiplicity, left to right.
  std::vector<mpq_class> slope_multiset() const;
  std::string to_string() const;
};

/// Hull of the given points. With `strict` a lower-bound point that could
/// touch the hull raises a PrecisionError; otherwise bounds are taken at face
/// value and the polygon is flagged uncertified when one becomes a vertex.
NewtonPolygon newton_polygon(std::vector<PolygonPoint> points, bool strict = true);

/// Polygon of a polynomial over Q_p (strict).
NewtonPolygon newton_polygon(const Poly& f);

}  // namespace senlab::padic
