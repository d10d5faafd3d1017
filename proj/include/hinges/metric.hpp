#pragma once

#include "hinges/subspace.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace hinges {

// A point of the ambient metric space: a euclidean vector or a Grassmannian
// subspace compared in the gap metric.
using Point = std::variant<RVec, Subspace>;

struct MetricSpace {
  enum class Kind { Euclidean, GrassmannGap };
  Kind kind = Kind::Euclidean;
  std::string id;       // "euclidean:<dim>" or "grassmann:<field>:<n>"
  int dim = 0;          // euclidean dimension
  Field field = Field::Complex;
  int n = 0;            // relations live in F^{2n}

  double distance(const Point& a, const Point& b) const;

  static std::shared_ptr<const MetricSpace> euclidean(int dim);
  static std::shared_ptr<const MetricSpace> grassmann(Field field, int n);
};

// Finite sample standing for a nonempty closed set, with the producer's claim of
// how finely it covers the true set.  An empty points list is the sentinel for
// the empty set; it is a valid value but not a valid hausdorff_distance operand.
struct ClosedSetSample {
  std::shared_ptr<const MetricSpace> space;
  double resolution = 0.0;
  std::vector<Point> points;

  bool is_empty_set() const { return points.empty(); }
};

// Exact max-min sweep over the two directed distances.
double hausdorff_distance(const ClosedSetSample& a, const ClosedSetSample& b);

// Distance from one point to the nearest sample point.
double point_to_sample(const Point& p, const ClosedSetSample& s);

// Probe points hit by at least a quarter of the sets in the tail half of the
// sequence, each hit meaning the set comes within eps of the probe.  With
// eps < 0 the radius defaults to half the smallest resolution involved.
ClosedSetSample limsup_set(const std::vector<ClosedSetSample>& seq,
                           const ClosedSetSample& probes, double eps = -1.0);

// Probe points hit by every set in the tail half.
ClosedSetSample liminf_set(const std::vector<ClosedSetSample>& seq,
                           const ClosedSetSample& probes, double eps = -1.0);

struct LimitCluster {
  int rep = -1;               // index of the latest member; stands for the limit
  std::vector<int> members;   // ascending sequence indices
};

// Greedy clustering of the tail half under hausdorff_distance.  Errors with
// "unresolved limit at tolerance" when the tail never revisits any cluster.
std::vector<LimitCluster> limit_clusters(const std::vector<ClosedSetSample>& seq, double tol);

// Representatives only, one per cluster.
std::vector<ClosedSetSample> limit_classes(const std::vector<ClosedSetSample>& seq, double tol);

// Spot-checks symmetry, nonnegativity and the triangle inequality on a bounded
// number of point triples.
void validate_metric_on_points(const MetricSpace& space, const std::vector<Point>& pts);

}  // namespace hinges
