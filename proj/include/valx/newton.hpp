#pragma once

// Newton polygons, conjugate differences and the Krasner constant.
//
// Slope convention: a segment from (i1, v1) to (i2, v2), i1 < i2, is reported
// with slope (v1 - v2) / (i2 - i1), which is the value of the i2 - i1 roots it
// accounts for.

#include <utility>
#include <vector>

#include "valx/polynomial.hpp"

namespace valx {

struct Segment {
  GroupValue slope;
  int multiplicity = 0;
  int from = 0;
  int to = 0;
};

/// Lower convex hull of points sorted by abscissa; collinear points merge.
/// Segments are returned in increasing slope order.
std::vector<Segment> lower_hull(const std::vector<std::pair<int, GroupValue>>& points);

struct NewtonPolygon {
  std::vector<std::pair<int, GroupValue>> points;
  std::vector<int> vertices;
  std::vector<Segment> segments;
  /// Multiplicity of the root 0.
  int ord0 = 0;
};

NewtonPolygon newton_polygon(const Poly& g);

/// Values of a - a_i over the conjugates a_i != a, ascending.
struct ConjDiffs {
  std::vector<GroupValue> values;
  /// Conjugates equal to a; always 0 under the separability precondition.
  int infinite_count = 0;

  GroupValue max() const { return values.back(); }
};

/// Conjugate differences of a over the ancestor level (default: the base).
ConjDiffs conjugate_differences(const FieldElement& a, const LevelPtr& over = nullptr);

GroupValue kras(const FieldElement& a, const LevelPtr& over = nullptr);

}  // namespace valx
