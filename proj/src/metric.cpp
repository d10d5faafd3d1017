#include "hinges/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hinges {

namespace {

const RVec& as_vector(const MetricSpace& space, const Point& p) {
  const RVec* v = std::get_if<RVec>(&p);
  if (!v) throw DomainError("point is not a euclidean vector");
  if (v->size() != space.dim) throw DomainError("euclidean point has wrong dimension");
  return *v;
}

const Subspace& as_subspace(const MetricSpace& space, const Point& p) {
  const Subspace* s = std::get_if<Subspace>(&p);
  if (!s) throw DomainError("point is not a subspace");
  if (s->ambient() != 2 * space.n || s->field() != space.field)
    throw DomainError("subspace point does not live in this Grassmannian");
  return *s;
}

int tail_start(int length) { return length - (length + 1) / 2; }

double default_eps(const std::vector<ClosedSetSample>& seq, const ClosedSetSample& probes) {
  double r = probes.resolution;
  for (const auto& s : seq) r = std::min(r, s.resolution);
  return r / 2.0;
}

void require_common_space(const ClosedSetSample& a, const ClosedSetSample& b) {
  if (!a.space || !b.space) throw UsageError("sample has no metric space attached");
  if (a.space->id != b.space->id)
    throw DomainError("samples live in different metric spaces: " + a.space->id + " vs " + b.space->id);
}

// Furthest a's point from b, scanning b from a cached start index so runs of
// nearby a's short-circuit on the same witness.
double directed_sweep(const ClosedSetSample& a, const ClosedSetSample& b) {
  const MetricSpace& space = *a.space;
  const int nb = static_cast<int>(b.points.size());
  double h = 0.0;
  int start = 0;
  for (const Point& p : a.points) {
    double best = std::numeric_limits<double>::infinity();
    int best_j = start;
    bool cut = false;
    for (int off = 0; off < nb; ++off) {
      const int j = (start + off) % nb;
      const double d = space.distance(p, b.points[j]);
      if (d < best) {
        best = d;
        best_j = j;
      }
      if (best <= h) {
        cut = true;
        start = j;
        break;
      }
    }
    if (!cut) {
      h = best;
      start = best_j;
    }
  }
  return h;
}

bool sample_hits(const ClosedSetSample& s, const Point& probe, double eps) {
  const MetricSpace& space = *s.space;
  for (const Point& p : s.points)
    if (space.distance(probe, p) <= eps) return true;
  return false;
}

ClosedSetSample filter_probes(const std::vector<ClosedSetSample>& seq,
                              const ClosedSetSample& probes, double eps,
                              bool require_all) {
  if (seq.empty()) throw DomainError("sequence of sets is empty");
  for (const auto& s : seq) {
    require_common_space(s, probes);
    if (s.is_empty_set()) throw DomainError("sequence contains the empty set");
  }
  if (eps < 0) eps = default_eps(seq, probes);
  const int len = static_cast<int>(seq.size());
  const int from = tail_start(len);
  const int tail = len - from;

  ClosedSetSample out;
  out.space = probes.space;
  out.resolution = probes.resolution;
  for (const Point& probe : probes.points) {
    int hits = 0;
    for (int i = from; i < len; ++i)
      if (sample_hits(seq[i], probe, eps)) ++hits;
    const bool keep = require_all ? (hits == tail) : (4 * hits >= tail);
    if (keep) out.points.push_back(probe);
  }
  return out;
}

}  // namespace

double MetricSpace::distance(const Point& a, const Point& b) const {
  if (kind == Kind::Euclidean) return (as_vector(*this, a) - as_vector(*this, b)).norm();
  return gap_distance(as_subspace(*this, a), as_subspace(*this, b));
}

std::shared_ptr<const MetricSpace> MetricSpace::euclidean(int dim) {
  if (dim <= 0) throw UsageError("euclidean dimension must be positive");
  auto s = std::make_shared<MetricSpace>();
  s->kind = Kind::Euclidean;
  s->dim = dim;
  s->id = "euclidean:" + std::to_string(dim);
  return s;
}

std::shared_ptr<const MetricSpace> MetricSpace::grassmann(Field field, int n) {
  if (n <= 0) throw UsageError("grassmannian size must be positive");
  auto s = std::make_shared<MetricSpace>();
  s->kind = Kind::GrassmannGap;
  s->field = field;
  s->n = n;
  s->id = std::string("grassmann:") + field_name(field) + ":" + std::to_string(n);
  return s;
}

double hausdorff_distance(const ClosedSetSample& a, const ClosedSetSample& b) {
  require_common_space(a, b);
  if (a.is_empty_set() || b.is_empty_set())
    throw DomainError("hausdorff distance needs nonempty sets");
  return std::max(directed_sweep(a, b), directed_sweep(b, a));
}

double point_to_sample(const Point& p, const ClosedSetSample& s) {
  if (!s.space) throw UsageError("sample has no metric space attached");
  if (s.is_empty_set()) throw DomainError("distance to the empty set is undefined");
  double best = std::numeric_limits<double>::infinity();
  for (const Point& q : s.points) best = std::min(best, s.space->distance(p, q));
  return best;
}

ClosedSetSample limsup_set(const std::vector<ClosedSetSample>& seq,
                           const ClosedSetSample& probes, double eps) {
  return filter_probes(seq, probes, eps, false);
}

ClosedSetSample liminf_set(const std::vector<ClosedSetSample>& seq,
                           const ClosedSetSample& probes, double eps) {
  return filter_probes(seq, probes, eps, true);
}

std::vector<LimitCluster> limit_clusters(const std::vector<ClosedSetSample>& seq, double tol) {
  if (seq.empty()) throw DomainError("sequence of sets is empty");
  for (std::size_t i = 1; i < seq.size(); ++i) require_common_space(seq[0], seq[i]);
  const int len = static_cast<int>(seq.size());
  const int from = tail_start(len);

  std::vector<LimitCluster> clusters;
  for (int i = len - 1; i >= from; --i) {
    bool placed = false;
    for (auto& c : clusters) {
      if (hausdorff_distance(seq[i], seq[c.rep]) <= tol) {
        c.members.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back(LimitCluster{i, {i}});
  }
  for (auto& c : clusters) std::sort(c.members.begin(), c.members.end());

  const int tail = len - from;
  if (tail >= 2) {
    bool any_repeat = false;
    for (const auto& c : clusters) any_repeat = any_repeat || c.members.size() >= 2;
    if (!any_repeat) throw DomainError("unresolved limit at tolerance");
  }
  return clusters;
}

std::vector<ClosedSetSample> limit_classes(const std::vector<ClosedSetSample>& seq, double tol) {
  std::vector<ClosedSetSample> out;
  for (const auto& c : limit_clusters(seq, tol)) out.push_back(seq[c.rep]);
  return out;
}

void validate_metric_on_points(const MetricSpace& space, const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  const int cap = std::min(n, 12);
  for (int i = 0; i < cap; ++i)
    for (int j = i; j < cap; ++j) {
      const double dij = space.distance(pts[i], pts[j]);
      const double dji = space.distance(pts[j], pts[i]);
      if (dij < 0) throw DomainError("metric produced a negative distance");
      if (std::abs(dij - dji) > 1e-12) throw DomainError("metric is not symmetric");
      if (i == j && dij > 1e-12) throw DomainError("metric has nonzero self-distance");
      for (int k = j; k < cap; ++k) {
        const double djk = space.distance(pts[j], pts[k]);
        const double dik = space.distance(pts[i], pts[k]);
        if (dik > dij + djk + 1e-9) throw DomainError("metric violates the triangle inequality");
      }
    }
}

}  // namespace hinges
