#include "senlab/padic/newton.hpp"

#include <algorithm>
#include <sstream>

#include "senlab/error.hpp"

namespace senlab::padic {

namespace {

// z-component of (a - o) x (b - o); <= 0 means b does not turn left.
mpq_class cross(const PolygonPoint& o, const PolygonPoint& a, const PolygonPoint& b) {
  return mpq_class(a.index - o.index) * (b.valuation - o.valuation) -
         (a.valuation - o.valuation) * mpq_class(b.index - o.index);
}

std::vector<PolygonPoint> lower_hull(const std::vector<PolygonPoint>& sorted) {
  std::vector<PolygonPoint> hull;
  for (const auto& pt : sorted) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0) hull.pop_back();
    hull.push_back(pt);
  }
  return hull;
}

mpq_class hull_height(const std::vector<PolygonPoint>& hull, long index) {
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const auto& a = hull[k];
    const auto& b = hull[k + 1];
    if (a.index <= index && index <= b.index) {
      mpq_class t(index - a.index, b.index - a.index);
      t.canonicalize();
      return a.valuation + (b.valuation - a.valuation) * t;
    }
  }
  return hull.front().valuation;
}

NewtonPolygon assemble(const std::vector<PolygonPoint>& hull) {
  NewtonPolygon poly;
  for (const auto& v : hull) poly.vertices.push_back({v.index, v.valuation, v.bound});
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const long width = hull[k + 1].index - hull[k].index;
    mpq_class slope = (hull[k].valuation - hull[k + 1].valuation) / mpq_class(width);
    slope.canonicalize();
    poly.slopes.push_back({slope, width});
  }
  poly.certified = std::none_of(hull.begin(), hull.end(), [](const auto& v) { return v.bound; });
  return poly;
}

}  // namespace

long NewtonPolygon::degree() const {
  long d = 0;
  for (const auto& s : slopes) d += s.multiplicity;
  return d;
}

std::vector<mpq_class> NewtonPolygon::slope_multiset() const {
  std::vector<mpq_class> out;
  for (const auto& s : slopes) out.insert(out.end(), static_cast<std::size_t>(s.multiplicity), s.root_valuation);
  return out;
}

std::string NewtonPolygon::to_string() const {
  std::ostringstream os;
  os << "vertices";
  for (const auto& v : vertices) os << " (" << v.index << "," << v.valuation.get_str() << (v.bound ? "+" : "") << ")";
  os << "; slopes";
  for (const auto& s : slopes) os << " " << s.root_valuation.get_str() << "^" << s.multiplicity;
  return os.str();
}

NewtonPolygon newton_polygon(std::vector<PolygonPoint> points, bool strict) {
  if (points.empty()) throw UsageError("Newton polygon of an empty point set");
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  if (!strict) return assemble(lower_hull(points));

  std::vector<PolygonPoint> known;
  for (const auto& pt : points) {
    if (!pt.bound) known.push_back(pt);
  }
  if (known.empty()) {
    throw PrecisionError("every coefficient is zero to precision; raise the working precision");
  }
  const auto hull = lower_hull(known);
  for (const auto& pt : points) {
    if (!pt.bound) continue;
    const bool outside = pt.index < known.front().index || pt.index > known.back().index;
    if (outside || pt.valuation <= hull_height(hull, pt.index)) {
      throw PrecisionError("coefficient " + std::to_string(pt.index) + " is zero only to precision " +
                           pt.valuation.get_str() +
                           ", which could move the Newton polygon; raise the working precision");
    }
  }
  return assemble(hull);
}

NewtonPolygon newton_polygon(const Poly& f) {
  std::vector<PolygonPoint> pts;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    const Scalar& c = f[i];
    pts.push_back({static_cast<long>(i), mpq_class(c.valuation()), c.is_zero()});
  }
  return newton_polygon(std::move(pts), true);
}

}  // namespace senlab::padic
