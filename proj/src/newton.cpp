#include "valx/newton.hpp"

#include <algorithm>

namespace valx {

namespace {

// True when b lies on or above the segment from a to c.
bool on_or_above(const std::pair<int, GroupValue>& a, const std::pair<int, GroupValue>& b,
                 const std::pair<int, GroupValue>& c) {
  GroupValue lhs = (b.second - a.second).scaled(Int(c.first - a.first));
  GroupValue rhs = (c.second - a.second).scaled(Int(b.first - a.first));
  return compare(lhs, rhs) != std::strong_ordering::less;
}

}  // namespace

std::vector<Segment> lower_hull(const std::vector<std::pair<int, GroupValue>>& points) {
  std::vector<std::pair<int, GroupValue>> hull;
  for (const auto& p : points) {
    if (p.second.is_infinite()) continue;
    while (hull.size() >= 2 && on_or_above(hull[hull.size() - 2], hull.back(), p)) hull.pop_back();
    hull.push_back(p);
  }
  std::vector<Segment> segs;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const auto& [i1, v1] = hull[k];
    const auto& [i2, v2] = hull[k + 1];
    segs.push_back({(v1 - v2).divided(Int(i2 - i1)), i2 - i1, i1, i2});
  }
  std::reverse(segs.begin(), segs.end());
  return segs;
}

NewtonPolygon newton_polygon(const Poly& g) {
  if (g.is_zero()) fail(ErrorKind::ZeroPolynomial, "Newton polygon of the zero polynomial");
  NewtonPolygon np;
  for (int i = 0; i <= g.degree(); ++i) {
    const FieldElement& c = g.coeffs()[static_cast<std::size_t>(i)];
    if (!c.is_zero()) np.points.push_back({i, c.value()});
  }
  np.ord0 = np.points.front().first;
  np.segments = lower_hull(np.points);
  if (np.segments.empty()) {
    np.vertices.push_back(np.points.front().first);
  } else {
    std::vector<int> v;
    for (const auto& s : np.segments) v.push_back(s.from);
    v.push_back(np.points.back().first);
    std::sort(v.begin(), v.end());
    np.vertices = v;
  }
  return np;
}

ConjDiffs conjugate_differences(const FieldElement& a, const LevelPtr& over) {
  LevelPtr base = over ? over : a.level()->path().front();
  Poly f = minimal_polynomial(a, base);
  if (f.derivative().is_zero()) fail(ErrorKind::Inseparable, "element is inseparable over the base");
  std::vector<FieldElement> c = taylor_expand(f, a);
  if (!c[0].is_zero()) fail(ErrorKind::NotARoot, "element is not a root of its minimal polynomial");
  ConjDiffs out;
  if (c.size() <= 2) return out;
  Poly quotient(a.level(), std::vector<FieldElement>(c.begin() + 1, c.end()));
  NewtonPolygon np = newton_polygon(quotient);
  out.infinite_count = np.ord0;
  for (const auto& s : np.segments)
    for (int k = 0; k < s.multiplicity; ++k) out.values.push_back(s.slope);
  return out;
}

GroupValue kras(const FieldElement& a, const LevelPtr& over) {
  ConjDiffs d = conjugate_differences(a, over);
  if (d.values.empty() && d.infinite_count == 0) fail(ErrorKind::DegreeOne, "Krasner constant of an element of degree 1");
  if (d.values.empty()) fail(ErrorKind::Inseparable, "all conjugates coincide");
  return d.max();
}

}  // namespace valx
