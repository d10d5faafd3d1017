#include "hinges/quotient.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace hinges {

namespace {

int tail_start(int len) { return len - (len + 1) / 2; }

void require_finalized(const QuotientScene& s) {
  if (!s.finalized) throw UsageError("scene is not finalized");
}

const std::vector<int>& class_of(const QuotientScene& s, const std::string& label) {
  auto it = s.classes.find(label);
  if (it == s.classes.end()) throw DomainError("unknown label: " + label);
  return it->second;
}

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

ClosedSetSample sample_of_indices(const QuotientScene& s, const std::vector<int>& idx) {
  ClosedSetSample out;
  out.space = s.space;
  out.resolution = s.resolution;
  out.points.reserve(idx.size());
  for (int i : idx) out.points.push_back(s.points[i]);
  return out;
}

std::vector<char> closure_flags(const QuotientScene& s, const std::vector<std::string>& labels) {
  const int np = static_cast<int>(s.points.size());
  std::vector<char> in(np, 0);
  for (const auto& l : labels)
    for (int i : class_of(s, l)) in[i] = 1;
  if (s.resolution > 0.0) {
    bool grew = true;
    while (grew) {
      grew = false;
      for (int i = 0; i < np; ++i) {
        if (in[i]) continue;
        for (int j = 0; j < np; ++j) {
          if (!in[j]) continue;
          if (s.space->distance(s.points[i], s.points[j]) <= s.resolution) {
            in[i] = 1;
            grew = true;
            break;
          }
        }
      }
    }
  }
  return in;
}

std::vector<int> flags_to_indices(const std::vector<char>& in) {
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(in.size()); ++i)
    if (in[i]) idx.push_back(i);
  return idx;
}

// Labels whose classes lie inside the flagged set; a cut class is a partition
// violation.
std::vector<std::string> star_labels(const QuotientScene& s, const std::vector<char>& in) {
  std::vector<std::string> out;
  for (const auto& [label, cls] : s.classes) {
    int cnt = 0;
    for (int i : cls) cnt += in[i] ? 1 : 0;
    if (cnt > 0 && cnt < static_cast<int>(cls.size()))
      throw DomainError("condition (*) violated at label " + label);
    if (cnt == static_cast<int>(cls.size())) out.push_back(label);
  }
  return out;
}

double point_to_indices(const QuotientScene& s, const Point& p, const std::vector<int>& idx) {
  double best = std::numeric_limits<double>::infinity();
  for (int i : idx) best = std::min(best, s.space->distance(p, s.points[i]));
  return best;
}

}  // namespace

QuotientScene finalize_scene(QuotientScene scene) {
  if (!scene.space) throw UsageError("scene has no metric space");
  if (scene.points.empty()) throw DomainError("scene has no points");
  if (scene.labels.size() != scene.points.size())
    throw DomainError("scene labels must be parallel to points");
  if (!(scene.resolution >= 0.0)) throw DomainError("scene resolution must be nonnegative");

  scene.classes.clear();
  for (int i = 0; i < static_cast<int>(scene.points.size()); ++i) {
    if (scene.labels[i].empty()) throw DomainError("scene point carries an empty label");
    scene.classes[scene.labels[i]].push_back(i);
  }

  scene.chart = sorted_unique(scene.chart);
  for (const auto& l : scene.chart)
    if (!scene.classes.count(l)) throw DomainError("unknown chart label: " + l);

  std::set<std::string> chart_set(scene.chart.begin(), scene.chart.end());
  for (const auto& seq : scene.sequences) {
    if (seq.size() < 2) throw DomainError("certificate sequence is too short");
    for (const auto& l : seq) {
      if (!scene.classes.count(l)) throw DomainError("unknown label: " + l);
      if (!chart_set.count(l)) throw DomainError("certificate label outside chart: " + l);
    }
  }

  validate_metric_on_points(*scene.space, scene.points);
  scene.finalized = true;

  // Distinct chart classes must stay resolvable after closure, otherwise the
  // scene cannot present them as distinct quotient members.
  std::vector<ClosedSetSample> closures;
  for (const auto& l : scene.chart)
    closures.push_back(sample_of_indices(scene, flags_to_indices(closure_flags(scene, {l}))));
  for (size_t a = 0; a < closures.size(); ++a)
    for (size_t b = a + 1; b < closures.size(); ++b)
      if (hausdorff_distance(closures[a], closures[b]) <= scene.resolution)
        throw DomainError("chart classes " + scene.chart[a] + " and " + scene.chart[b] +
                          " are not separated at the scene resolution");
  return scene;
}

std::vector<int> resolution_closure(const QuotientScene& scene,
                                    const std::vector<std::string>& labels) {
  require_finalized(scene);
  if (labels.empty()) throw UsageError("empty label set");
  return flags_to_indices(closure_flags(scene, labels));
}

ClosedSetSample class_union_sample(const QuotientScene& scene,
                                   const std::vector<std::string>& labels) {
  require_finalized(scene);
  if (labels.empty()) throw UsageError("empty label set");
  std::vector<int> idx;
  for (const auto& l : sorted_unique(labels))
    for (int i : class_of(scene, l)) idx.push_back(i);
  std::sort(idx.begin(), idx.end());
  return sample_of_indices(scene, idx);
}

bool quotient_converges(const QuotientScene& scene, const std::vector<std::string>& seq,
                        const std::string& target) {
  require_finalized(scene);
  if (seq.empty()) throw UsageError("empty label sequence");
  const auto& tclass = class_of(scene, target);
  for (const auto& l : seq) class_of(scene, l);

  const int from = tail_start(static_cast<int>(seq.size()));
  double best = std::numeric_limits<double>::infinity();
  for (int m : tclass) {
    double worst = 0.0;
    for (int j = from; j < static_cast<int>(seq.size()); ++j) {
      worst = std::max(worst, point_to_indices(scene, scene.points[m], class_of(scene, seq[j])));
      if (worst > best) break;
    }
    best = std::min(best, worst);
  }
  return best <= scene.resolution;
}

std::vector<std::string> check_partition_star(const QuotientScene& scene,
                                              const std::vector<std::string>& b) {
  require_finalized(scene);
  if (b.empty()) throw UsageError("empty label set");
  auto bs = sorted_unique(b);
  for (const auto& l : bs) class_of(scene, l);
  return star_labels(scene, closure_flags(scene, bs));
}

std::vector<std::string> labels_of(const QuotientScene& scene, const ClosedSetSample& n) {
  require_finalized(scene);
  if (!n.space || n.space->id != scene.space->id)
    throw DomainError("sample lives in a different metric space than the scene");
  if (n.is_empty_set()) throw DomainError("the empty set carries no labels");

  const double slack = std::max(n.resolution, 0.0);
  std::vector<std::string> out;
  for (const auto& [label, cls] : scene.classes) {
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = 0.0;
    for (int i : cls) {
      const double d = point_to_sample(scene.points[i], n);
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
    const bool contained = dmax <= slack;
    if (dmin <= slack && !contained) throw DomainError("not saturated (label " + label + ")");
    if (contained) out.push_back(label);
  }
  return out;
}

std::vector<QuotientMember> separated_quotient(const QuotientScene& scene, double tol) {
  require_finalized(scene);
  if (scene.chart.empty()) throw UsageError("scene chart is empty");
  if (!(tol > 0.0)) throw UsageError("tolerance must be positive");

  std::map<std::vector<std::string>, ClosedSetSample> out;
  std::map<std::string, std::pair<std::vector<std::string>, ClosedSetSample>> base;
  for (const auto& alpha : scene.chart) {
    auto flags = closure_flags(scene, {alpha});
    auto labels = star_labels(scene, flags);
    auto cs = sample_of_indices(scene, flags_to_indices(flags));
    out[labels] = cs;
    base[alpha] = {std::move(labels), std::move(cs)};
  }

  auto try_emit = [&](const std::vector<std::string>& s, const ClosedSetSample& rep) {
    if (s.empty()) return false;
    std::vector<std::string> closed;
    std::vector<char> flags;
    try {
      flags = closure_flags(scene, s);
      closed = star_labels(scene, flags);
    } catch (const DomainError&) {
      return false;
    }
    auto cs = sample_of_indices(scene, flags_to_indices(flags));
    if (hausdorff_distance(cs, rep) > tol) return false;
    out[closed] = std::move(cs);
    return true;
  };

  for (const auto& cert : scene.sequences) {
    std::vector<ClosedSetSample> samples;
    samples.reserve(cert.size());
    for (const auto& l : cert) samples.push_back(base.at(l).second);

    std::set<std::string> visited;
    for (const auto& l : cert)
      for (const auto& m : base.at(l).first) visited.insert(m);

    auto clusters = limit_clusters(samples, tol);
    for (const auto& c : clusters) {
      // A settled cluster reproduces the chart closure it revisits; only an
      // approaching tail certifies a new limit.  Net decay by half separates
      // approach from oscillation, with per-step slack for sampling wobble.
      if (c.members.size() < 3) continue;
      const auto& rep = samples[c.rep];
      std::vector<double> ds;
      for (size_t i = 0; i + 1 < c.members.size(); ++i)
        ds.push_back(hausdorff_distance(samples[c.members[i]], rep));
      bool moving = ds.back() > 1e-12 && ds.back() <= 0.5 * ds.front();
      for (size_t i = 0; i + 1 < ds.size() && moving; ++i)
        if (!(ds[i + 1] <= 1.05 * ds[i])) moving = false;
      if (!moving) continue;

      std::vector<std::string> full;
      for (const auto& [label, cls] : scene.classes) {
        bool inside = true;
        for (int i : cls) {
          if (point_to_sample(scene.points[i], rep) > tol) {
            inside = false;
            break;
          }
        }
        if (inside) full.push_back(label);
      }
      std::vector<std::string> escaped;
      for (const auto& l : full)
        if (!visited.count(l)) escaped.push_back(l);
      if (!try_emit(escaped, rep)) try_emit(full, rep);
    }
  }

  std::vector<QuotientMember> result;
  result.reserve(out.size());
  for (auto& [labels, set] : out) result.push_back({labels, std::move(set)});
  return result;
}

bool is_admissible_by_sequences(const QuotientScene& scene, const std::vector<std::string>& s,
                                double eps) {
  require_finalized(scene);
  if (s.empty()) throw UsageError("empty label set");
  if (eps < 0.0) eps = scene.resolution;

  auto target = sorted_unique(s);
  for (const auto& l : target) class_of(scene, l);
  std::vector<char> uflags;
  try {
    uflags = closure_flags(scene, target);
    if (star_labels(scene, uflags) != target) return false;
  } catch (const DomainError&) {
    return false;
  }
  const auto uidx = flags_to_indices(uflags);
  const auto usample = sample_of_indices(scene, uidx);

  std::map<std::string, ClosedSetSample> closure_cache;
  auto closure_of = [&](const std::string& l) -> const ClosedSetSample& {
    auto it = closure_cache.find(l);
    if (it == closure_cache.end())
      it = closure_cache
               .emplace(l, sample_of_indices(scene, flags_to_indices(closure_flags(scene, {l}))))
               .first;
    return it->second;
  };

  // A cyclic chart sequence hits the union of its labels' closures frequently
  // and nothing else, and its tail visits every label; so one label suffices
  // exactly when its closure covers the target and strays nowhere else, and a
  // multi-label cycle with all periods at most four reduces to its labels
  // passing one by one.
  if (scene.space->kind == MetricSpace::Kind::Euclidean) {
    for (const auto& alpha : scene.chart) {
      const auto& cs = closure_of(alpha);
      bool covers = true;
      for (int i : uidx) {
        if (point_to_sample(scene.points[i], cs) > eps) {
          covers = false;
          break;
        }
      }
      if (!covers) continue;
      bool strays = false;
      for (const auto& p : scene.points) {
        if (point_to_sample(p, cs) <= eps && point_to_sample(p, usample) > eps) {
          strays = true;
          break;
        }
      }
      if (!strays) return true;
    }
  }

  ClosedSetSample all_points;
  all_points.space = scene.space;
  all_points.resolution = scene.resolution;
  all_points.points = scene.points;

  for (const auto& cert : scene.sequences) {
    std::vector<ClosedSetSample> samples;
    for (const auto& l : cert) samples.push_back(closure_of(l));
    const size_t want = std::max<size_t>(2 * cert.size(), 8);
    while (samples.size() < want) samples.push_back(samples.back());

    const auto covered = liminf_set(samples, usample, eps);
    if (covered.points.size() != usample.points.size()) continue;
    const auto frequent = limsup_set(samples, all_points, eps);
    bool within = true;
    for (const auto& p : frequent.points) {
      if (point_to_sample(p, usample) > eps) {
        within = false;
        break;
      }
    }
    if (within) return true;
  }
  return false;
}

std::vector<std::vector<std::string>> admissible_label_sets(const QuotientScene& scene,
                                                            double eps) {
  require_finalized(scene);
  std::vector<std::string> all;
  for (const auto& [label, cls] : scene.classes) all.push_back(label);
  if (all.size() > 16) throw UsageError("too many labels to enumerate admissible sets");

  std::vector<std::vector<std::string>> out;
  const unsigned full = 1u << all.size();
  for (unsigned mask = 1; mask < full; ++mask) {
    std::vector<std::string> s;
    for (size_t i = 0; i < all.size(); ++i)
      if (mask & (1u << i)) s.push_back(all[i]);
    if (is_admissible_by_sequences(scene, s, eps)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hinges
