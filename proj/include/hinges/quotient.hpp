#pragma once

#include "hinges/metric.hpp"

#include <map>
#include <string>
#include <vector>

namespace hinges {

// A partitioned point sample of a compact metric space: every point carries a
// label, chart labels mark the classes whose orbit closures seed the quotient,
// and optional label sequences act as limit certificates.
struct QuotientScene {
  std::shared_ptr<const MetricSpace> space;
  std::vector<Point> points;
  std::vector<std::string> labels;
  std::vector<std::string> chart;
  double resolution = 0.0;
  std::vector<std::vector<std::string>> sequences;

  std::map<std::string, std::vector<int>> classes;  // built by finalize_scene
  bool finalized = false;
};

// Builds the class index and checks the scene: parallel arrays, known chart
// labels, metric sanity on a bounded subset, and pairwise separation of the
// chart-class closures beyond the scene resolution.
QuotientScene finalize_scene(QuotientScene scene);

// Indices of the iterated resolution-closure of the named classes.
std::vector<int> resolution_closure(const QuotientScene& scene,
                                    const std::vector<std::string>& labels);

ClosedSetSample class_union_sample(const QuotientScene& scene,
                                   const std::vector<std::string>& labels);

// Whether representatives of the labeled classes can approach a point of the
// target class: the best representative must track the tail of the sequence
// within the scene resolution.
bool quotient_converges(const QuotientScene& scene, const std::vector<std::string>& seq,
                        const std::string& target);

// Labels making up the closure of the union of the given classes; errors with
// "condition (*) violated at label ..." when the closure cuts a class.
std::vector<std::string> check_partition_star(const QuotientScene& scene,
                                              const std::vector<std::string>& b);

// Labels of the classes contained in the sample, with the sample's resolution
// as slack; errors with "not saturated" when a class is met but not contained.
std::vector<std::string> labels_of(const QuotientScene& scene, const ClosedSetSample& n);

struct QuotientMember {
  std::vector<std::string> labels;
  ClosedSetSample set;
};

// The chart-class closures together with the limit sets discoverable from the
// scene's certificate sequences at tolerance tol.  A tail cluster that is
// still strictly approaching its limit snaps to the nearby classes minus the
// labels it visited on the way; settled clusters reproduce chart closures and
// are not re-emitted.  Members are deduplicated and sorted by label set.
std::vector<QuotientMember> separated_quotient(const QuotientScene& scene, double tol);

// Whether some chart-label sequence has the union of the S-classes as its one
// and only limit: the union must be hit at every tail step and nothing outside
// it may be hit frequently.  eps < 0 uses the scene resolution.  Euclidean
// scenes search cyclic sequences exhaustively (periods up to 4) plus
// certificates; sampled continuous scenes rely on certificates alone.
bool is_admissible_by_sequences(const QuotientScene& scene, const std::vector<std::string>& s,
                                double eps = -1.0);

// Every admissible label subset of a small finite scene.
std::vector<std::vector<std::string>> admissible_label_sets(const QuotientScene& scene,
                                                            double eps = -1.0);

}  // namespace hinges
