#include "hinges/hinge.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace hinges {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

Subspace first_factor(Field field, int n) {
  Mat frame = Mat::Zero(2 * n, n);
  frame.topRows(n) = Mat::Identity(n, n);
  return Subspace(field, 2 * n, frame);
}

Subspace second_factor(Field field, int n) {
  Mat frame = Mat::Zero(2 * n, n);
  frame.bottomRows(n) = Mat::Identity(n, n);
  return Subspace(field, 2 * n, frame);
}

// The fixed relation K (+) I for subspaces of the two factors.
LinearRelation fixed_relation(Field field, int n, const Subspace& ker, const Subspace& indef,
                              double rank_tol) {
  Mat frame = Mat::Zero(2 * n, ker.dim() + indef.dim());
  frame.block(0, 0, n, ker.dim()) = ker.frame();
  frame.block(n, ker.dim(), n, indef.dim()) = indef.frame();
  return LinearRelation::from_subspace(Subspace(field, 2 * n, frame), rank_tol);
}

// Fixedness as a number: gap to the relation's own Ker (+) Indef, or 1 when the
// dimensions already rule it out.
double fixedness_gap(const LinearRelation& v, double rank_tol) {
  if (v.ker().dim() + v.indef().dim() != v.n()) return 1.0;
  return gap_distance(v, ker_indef_relation(v, rank_tol));
}

std::vector<double> modulus_ladder(const GridSpec& grid) {
  if (grid.moduli < 1 || grid.modulus_min <= 0 || grid.modulus_max < grid.modulus_min ||
      grid.phases < 1)
    throw UsageError("bad scaling grid");
  std::vector<double> m;
  if (grid.moduli == 1) {
    m.push_back(grid.modulus_min);
    return m;
  }
  const double lo = std::log(grid.modulus_min);
  const double hi = std::log(grid.modulus_max);
  for (int i = 0; i < grid.moduli; ++i)
    m.push_back(std::exp(lo + (hi - lo) * i / (grid.moduli - 1)));
  return m;
}

std::vector<cplx> phase_ring(Field field, const GridSpec& grid) {
  if (field == Field::Real) {
    if (grid.positive_only) return {cplx(1.0, 0.0)};
    return {cplx(1.0, 0.0), cplx(-1.0, 0.0)};
  }
  std::vector<cplx> ph;
  for (int l = 0; l < grid.phases; ++l) {
    const double t = 2.0 * std::numbers::pi_v<double> * l / grid.phases;
    ph.push_back(cplx(std::cos(t), std::sin(t)));
  }
  return ph;
}

struct OrbitPoints {
  std::vector<Point> points;
  double resolution = 0.0;
};

// Grid over the orbit of one moving component, with the covering radius
// measured at midpoint and tail probes.  Phase rotation is unitary on the
// ambient space, so probing one phase cell covers them all.
OrbitPoints sample_orbit(const LinearRelation& p, const GridSpec& grid, double rank_tol) {
  const auto moduli = modulus_ladder(grid);
  const auto phases = phase_ring(p.field(), grid);
  const int nm = static_cast<int>(moduli.size());
  const int np = static_cast<int>(phases.size());

  OrbitPoints out;
  std::vector<Subspace> base(nm);        // phase 0 column, reused as probe candidates
  std::vector<Subspace> side(nm);        // phase 1 column when present
  for (int i = 0; i < nm; ++i) {
    for (int l = 0; l < np; ++l) {
      Subspace s = scale_space(moduli[i] * phases[l], p);
      if (l == 0) base[i] = s;
      if (l == 1) side[i] = s;
      out.points.push_back(std::move(s));
    }
  }

  const Subspace down = shrink_limit(p, rank_tol).space();
  const Subspace up = blowup_limit(p, rank_tol).space();

  double res = 0.0;
  auto probe = [&](cplx lam, std::initializer_list<const Subspace*> cands) {
    const Subspace q = scale_space(lam, p);
    double best = std::numeric_limits<double>::infinity();
    for (const Subspace* c : cands) best = std::min(best, gap_distance(q, *c));
    res = std::max(res, best);
  };

  const bool midphase = p.field() == Field::Complex && np > 1;
  const cplx pm = midphase ? cplx(std::cos(std::numbers::pi_v<double> / np),
                                  std::sin(std::numbers::pi_v<double> / np))
                           : cplx(1.0, 0.0);
  for (int i = 0; i + 1 < nm; ++i) {
    const double mid = std::sqrt(moduli[i] * moduli[i + 1]);
    probe(mid, {&base[i], &base[i + 1]});
    if (midphase) probe(mid * pm, {&base[i], &base[i + 1], &side[i], &side[i + 1]});
  }
  if (midphase)
    for (int i = 0; i < nm; ++i) probe(moduli[i] * pm, {&base[i], &side[i]});

  const double step = nm > 1 ? moduli[1] / moduli[0] : 10.0;
  probe(moduli.front() / step, {&base.front(), &down});
  probe(moduli.front() / (step * step), {&base.front(), &down});
  probe(moduli.back() * step, {&base.back(), &up});
  probe(moduli.back() * step * step, {&base.back(), &up});

  out.resolution = res;
  return out;
}

struct ScaleSplit {
  std::vector<int> group_of;     // singular value index -> group index
  std::vector<int> sizes;        // per group, sigma-descending
  std::vector<double> scales;    // geometric mean per group
  Mat u, v;
  RVec sigma;
};

ScaleSplit svd_ladder(Field field, const Mat& m) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw UsageError("family must produce square matrices");
  const int n = static_cast<int>(m.rows());

  ScaleSplit s;
  // A Hermitian member gets the symmetric factorization: one basis serves both
  // sides, which keeps flattened components exactly Lagrangian.  A general SVD
  // computes the two bases independently, and near a small singular value they
  // drift apart by the roundoff already baked into the member.
  const double scale = m.cwiseAbs().maxCoeff();
  const bool hermitian =
      scale > 0.0 && (m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
  if (hermitian) {
    Mat q;
    RVec lam;
    if (field == Field::Real) {
      Eigen::SelfAdjointEigenSolver<RMat> es(((m.real() + m.real().transpose()) / 2.0).eval());
      q = Mat::Zero(n, n);
      q.real() = es.eigenvectors();
      lam = es.eigenvalues();
    } else {
      Eigen::SelfAdjointEigenSolver<Mat> es(((m + m.adjoint()) / 2.0).eval());
      q = es.eigenvectors();
      lam = es.eigenvalues();
    }
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int i, int j) { return std::abs(lam(i)) > std::abs(lam(j)); });
    s.u = Mat(n, n);
    s.v = Mat(n, n);
    s.sigma = RVec(n);
    for (int j = 0; j < n; ++j) {
      const int i = idx[j];
      s.sigma(j) = std::abs(lam(i));
      s.v.col(j) = q.col(i);
      s.u.col(j) = (lam(i) < 0.0 ? -1.0 : 1.0) * q.col(i);
    }
  } else if (field == Field::Real) {
    Eigen::JacobiSVD<RMat> svd(m.real(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    s.u = Mat::Zero(n, n);
    s.u.real() = svd.matrixU();
    s.v = Mat::Zero(n, n);
    s.v.real() = svd.matrixV();
    s.sigma = svd.singularValues();
  } else {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    s.u = svd.matrixU();
    s.v = svd.matrixV();
    s.sigma = svd.singularValues();
  }
  if (s.sigma(n - 1) <= kSingularFloor * s.sigma(0))
    throw DomainError("family member is singular at a probe");
  return s;
}

// Consecutive directions share a scale group when their sigma ratio holds
// steady from one probe to the next; a jump by about the probe step marks a
// boundary between growth rates.  An absolute ratio cutoff at a single probe
// would misgroup families whose coefficient spread rivals the step.
void assign_groups(ScaleSplit& a, ScaleSplit& b, double step) {
  const int n = static_cast<int>(a.sigma.size());
  const double thresh = std::sqrt(step);
  a.group_of.assign(n, 0);
  b.group_of.assign(n, 0);
  for (int j = 1; j < n; ++j) {
    const double ra = a.sigma(j - 1) / a.sigma(j);
    const double rb = b.sigma(j - 1) / b.sigma(j);
    const double drift = rb / ra;
    if (drift <= 1.0 / thresh) throw DomainError("scales not separated at probes");
    const bool split = drift >= thresh;
    a.group_of[j] = a.group_of[j - 1] + (split ? 1 : 0);
    b.group_of[j] = a.group_of[j];
  }
  for (ScaleSplit* s : {&a, &b}) {
    const int groups = s->group_of[n - 1] + 1;
    s->sizes.assign(groups, 0);
    std::vector<double> logsum(groups, 0.0);
    for (int j = 0; j < n; ++j) {
      ++s->sizes[s->group_of[j]];
      logsum[s->group_of[j]] += std::log(s->sigma(j));
    }
    s->scales.clear();
    for (int g = 0; g < groups; ++g) s->scales.push_back(std::exp(logsum[g] / s->sizes[g]));
  }
}

// Component gi of the limit: directions of larger scale have already escaped to
// the image side, smaller scales have collapsed to the kernel side, and the
// in-group block keeps its graph.  Columns are orthonormal by construction.
Subspace flatten_component(Field field, const ScaleSplit& s, int gi) {
  const int n = static_cast<int>(s.sigma.size());
  Mat frame = Mat::Zero(2 * n, n);
  for (int j = 0; j < n; ++j) {
    const int g = s.group_of[j];
    if (g < gi) {
      frame.col(j).tail(n) = s.u.col(j);
    } else if (g > gi) {
      frame.col(j).head(n) = s.v.col(j);
    } else {
      const double c = s.sigma(j) / s.scales[gi];
      const double w = 1.0 / std::sqrt(1.0 + c * c);
      frame.col(j).head(n) = w * s.v.col(j);
      frame.col(j).tail(n) = (c * w) * s.u.col(j);
    }
  }
  return Subspace(field, 2 * n, frame);
}

void require_shape(const Hinge& h) {
  if (h.k() < 1 || static_cast<int>(h.q.size()) != h.k() + 1)
    throw UsageError("malformed hinge");
  for (const auto& r : h.p)
    if (r.field() != h.field || r.n() != h.n) throw UsageError("malformed hinge");
  for (const auto& r : h.q)
    if (r.field() != h.field || r.n() != h.n) throw UsageError("malformed hinge");
}

}  // namespace

std::string HingeReport::summary() const {
  if (pass) return "hinge valid";
  std::ostringstream os;
  os << "hinge validation failed:";
  int count = 0;
  for (const auto& c : checks)
    for (const auto& issue : c.issues) {
      os << " [" << c.axiom << "] " << issue << ";";
      if (++count >= 6) {
        os << " ...";
        return os.str();
      }
    }
  return os.str();
}

HingeReport validate_hinge(const Hinge& h, double tol, double rank_tol) {
  HingeReport rep;

  AxiomCheck shape{"shape"};
  const int k = h.k();
  if (k < 1) shape.issues.push_back("no moving components");
  if (static_cast<int>(h.q.size()) != k + 1)
    shape.issues.push_back("expected " + std::to_string(k + 1) + " fixed relations, got " +
                           std::to_string(h.q.size()));
  for (int j = 0; j < k; ++j)
    if (h.p[j].field() != h.field || h.p[j].n() != h.n)
      shape.issues.push_back("P_" + std::to_string(j + 1) + " disagrees on field or size");
  for (std::size_t j = 0; j < h.q.size(); ++j)
    if (h.q[j].field() != h.field || h.q[j].n() != h.n)
      shape.issues.push_back("Q_" + std::to_string(j) + " disagrees on field or size");
  shape.pass = shape.issues.empty();
  rep.checks.push_back(shape);
  if (!shape.pass) {
    rep.pass = false;
    return rep;
  }

  AxiomCheck fixc{"fixedness"};
  for (int j = 0; j <= k; ++j) {
    const double g = fixedness_gap(h.q[j], rank_tol);
    fixc.worst_gap = std::max(fixc.worst_gap, g);
    if (g > tol)
      fixc.issues.push_back("Q_" + std::to_string(j) + " is not a fixed point (gap " + fmt(g) + ")");
  }
  for (int j = 1; j <= k; ++j) {
    const double g = fixedness_gap(h.p[j - 1], rank_tol);
    if (g <= tol)
      fixc.issues.push_back("P_" + std::to_string(j) + " is a fixed point (gap " + fmt(g) + ")");
  }
  fixc.pass = fixc.issues.empty();
  rep.checks.push_back(fixc);

  AxiomCheck chain{"chain"};
  auto link = [&](const Subspace& a, const Subspace& b, const std::string& what) {
    const double g = gap_distance(a, b);
    chain.worst_gap = std::max(chain.worst_gap, g);
    if (g > tol) chain.issues.push_back(what + " (gap " + fmt(g) + ")");
  };
  for (int j = 1; j <= k; ++j) {
    link(h.p[j - 1].ker(), h.q[j].ker(),
         "Ker P_" + std::to_string(j) + " differs from Ker Q_" + std::to_string(j));
    link(h.p[j - 1].im(), h.q[j].im(),
         "Im P_" + std::to_string(j) + " differs from Im Q_" + std::to_string(j));
  }
  for (int j = 1; j <= k - 1; ++j) {
    link(h.p[j].dom(), h.p[j - 1].ker(),
         "Dom P_" + std::to_string(j + 1) + " differs from Ker P_" + std::to_string(j));
    link(h.p[j].indef(), h.p[j - 1].im(),
         "Indef P_" + std::to_string(j + 1) + " differs from Im P_" + std::to_string(j));
  }
  chain.pass = chain.issues.empty();
  rep.checks.push_back(chain);

  AxiomCheck ends{"endpoints"};
  auto endlink = [&](double g, const std::string& what) {
    ends.worst_gap = std::max(ends.worst_gap, g);
    if (g > tol) ends.issues.push_back(what + " (gap " + fmt(g) + ")");
  };
  endlink(gap_distance(h.q.front().space(), first_factor(h.field, h.n)),
          "Q_0 is not the first factor");
  endlink(gap_distance(h.q.back().space(), second_factor(h.field, h.n)),
          "Q_" + std::to_string(k) + " is not the second factor");
  endlink(gap_distance(h.p.front().dom(), Subspace::full(h.field, h.n)),
          "Dom P_1 is not the full space");
  endlink(gap_distance(h.p.back().im(), Subspace::full(h.field, h.n)),
          "Im P_" + std::to_string(k) + " is not the full space");
  ends.pass = ends.issues.empty();
  rep.checks.push_back(ends);

  rep.pass = fixc.pass && chain.pass && ends.pass;
  return rep;
}

void require_valid_hinge(const Hinge& h, double tol, double rank_tol) {
  const HingeReport rep = validate_hinge(h, tol, rank_tol);
  if (!rep.pass) throw DomainError(rep.summary());
}

std::vector<LinearRelation> derive_q(const std::vector<LinearRelation>& p, double rank_tol) {
  if (p.empty()) throw UsageError("need at least one moving component");
  const Field field = p.front().field();
  const int n = p.front().n();
  for (const auto& r : p)
    if (r.field() != field || r.n() != n)
      throw UsageError("moving components disagree on field or size");

  const int k = static_cast<int>(p.size());
  for (int j = 0; j < k; ++j)
    if (p[j].ker().dim() + p[j].im().dim() != n)
      throw DomainError("chain dimensions inconsistent");
  for (int j = 1; j < k; ++j)
    if (p[j].dom().dim() != p[j - 1].ker().dim() || p[j].indef().dim() != p[j - 1].im().dim())
      throw DomainError("chain dimensions inconsistent");

  std::vector<LinearRelation> q;
  q.push_back(fixed_relation(field, n, Subspace::full(field, n), Subspace::zero(field, n), rank_tol));
  for (int j = 1; j < k; ++j)
    q.push_back(fixed_relation(field, n, p[j - 1].ker(), p[j - 1].im(), rank_tol));
  q.push_back(fixed_relation(field, n, Subspace::zero(field, n), Subspace::full(field, n), rank_tol));
  return q;
}

Hinge hinge_with_derived_q(std::vector<LinearRelation> p, double rank_tol) {
  if (p.empty()) throw UsageError("need at least one moving component");
  Hinge h;
  h.field = p.front().field();
  h.n = p.front().n();
  h.q = derive_q(p, rank_tol);
  h.p = std::move(p);
  return h;
}

Hinge hinge_of_invertible(Field field, const Mat& a, double rank_tol) {
  if (a.rows() == 0 || a.rows() != a.cols()) throw UsageError("matrix must be square");
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= rank_tol * sv(0))
    throw DomainError("matrix is singular at the working tolerance");
  std::vector<LinearRelation> p{LinearRelation::graph(field, a)};
  return hinge_with_derived_q(std::move(p), rank_tol);
}

std::vector<cplx> scaling_grid(Field field, const GridSpec& grid) {
  std::vector<cplx> out;
  for (double m : modulus_ladder(grid))
    for (const cplx& ph : phase_ring(field, grid)) out.push_back(m * ph);
  return out;
}

ClosedSetSample hinge_to_sample(const Hinge& h, const GridSpec& grid, double rank_tol) {
  require_shape(h);
  ClosedSetSample out;
  out.space = MetricSpace::grassmann(h.field, h.n);
  for (const auto& q : h.q) out.points.push_back(q.space());
  for (const auto& p : h.p) {
    OrbitPoints orbit = sample_orbit(p, grid, rank_tol);
    out.resolution = std::max(out.resolution, orbit.resolution);
    for (auto& pt : orbit.points) out.points.push_back(std::move(pt));
  }
  return out;
}

ClosedSetSample orbit_closure_sample(const LinearRelation& v, const GridSpec& grid,
                                     double rank_tol) {
  if (v.ker().dim() != 0 || v.indef().dim() != 0)
    throw DomainError("relation is not the graph of an invertible operator");
  induced_operator(v, rank_tol);  // certifies invertibility

  ClosedSetSample out;
  out.space = MetricSpace::grassmann(v.field(), v.n());
  out.points.push_back(shrink_limit(v, rank_tol).space());
  out.points.push_back(blowup_limit(v, rank_tol).space());
  OrbitPoints orbit = sample_orbit(v, grid, rank_tol);
  out.resolution = orbit.resolution;
  for (auto& pt : orbit.points) out.points.push_back(std::move(pt));
  return out;
}

ClosedSetSample limit_of_orbit_closures(Field field, const std::vector<Mat>& family,
                                        const GridSpec& grid, double tol, double rank_tol) {
  if (family.empty()) throw UsageError("family is empty");
  std::vector<ClosedSetSample> seq;
  for (const Mat& g : family)
    seq.push_back(orbit_closure_sample(LinearRelation::graph(field, g), grid, rank_tol));

  const auto clusters = limit_clusters(seq, tol);
  if (clusters.size() == 1) return seq[clusters.front().rep];

  std::vector<const LimitCluster*> repeating;
  for (const auto& c : clusters)
    if (c.members.size() >= 2) repeating.push_back(&c);
  if (repeating.size() == 1) return seq[repeating.front()->rep];

  std::ostringstream os;
  os << "sequence has multiple limit classes:";
  for (const auto* c : repeating)
    os << " {rep " << c->rep << ", size " << c->members.size() << "}";
  throw DomainError(os.str());
}

Hinge hinge_limit(Field field, const MatrixFamily& g, const std::vector<double>& probes,
                  double tol, double rank_tol) {
  std::vector<double> ps = probes;
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  if (ps.size() < 2) throw UsageError("need at least two probes");

  const double t_prev = ps[ps.size() - 2];
  const double t_last = ps[ps.size() - 1];
  ScaleSplit a = svd_ladder(field, g(t_prev));
  ScaleSplit b = svd_ladder(field, g(t_last));
  assign_groups(a, b, t_last / t_prev);

  std::vector<LinearRelation> p;
  for (int i = 0; i < static_cast<int>(b.sizes.size()); ++i) {
    const Subspace fa = flatten_component(field, a, i);
    const Subspace fb = flatten_component(field, b, i);
    const double d = gap_distance(fa, fb);
    if (d > tol)
      throw DomainError("limit not settled at probes (component " + std::to_string(i + 1) +
                        ", gap " + fmt(d) + ")");
    p.push_back(LinearRelation::from_subspace(fb, rank_tol));
  }

  Hinge h = hinge_with_derived_q(std::move(p), rank_tol);
  const HingeReport rep = validate_hinge(h, std::max(tol, kGapTol), rank_tol);
  if (!rep.pass) throw DomainError(rep.summary());
  return h;
}

Hinge extract_hinge_from_sample(const ClosedSetSample& n, double tol, double rank_tol) {
  if (!n.space || n.space->kind != MetricSpace::Kind::GrassmannGap)
    throw UsageError("sample is not over a grassmannian");
  if (n.is_empty_set()) throw DomainError("sample is not a hinge set (empty)");
  const double vtol = std::max(tol, kGapTol);

  std::vector<LinearRelation> fixed;
  std::vector<LinearRelation> reps;
  for (const Point& pt : n.points) {
    const Subspace* s = std::get_if<Subspace>(&pt);
    if (!s) throw UsageError("sample point is not a subspace");
    LinearRelation rel = LinearRelation::from_subspace(*s, rank_tol);
    if (fixedness_gap(rel, rank_tol) <= vtol) {
      fixed.push_back(std::move(rel));
      continue;
    }
    bool placed = false;
    for (const auto& rep : reps)
      if (equal_mod_scale(rel, rep, vtol, rank_tol)) {
        placed = true;
        break;
      }
    if (!placed) reps.push_back(std::move(rel));
  }

  if (reps.empty()) throw DomainError("sample is not a hinge set (no moving components)");
  std::stable_sort(reps.begin(), reps.end(),
                   [](const LinearRelation& x, const LinearRelation& y) {
                     return x.ker().dim() > y.ker().dim();
                   });

  Hinge h;
  try {
    h = hinge_with_derived_q(std::move(reps), rank_tol);
  } catch (const DomainError& e) {
    throw DomainError(std::string("sample is not a hinge set (") + e.what() + ")");
  }
  const HingeReport rep = validate_hinge(h, vtol, rank_tol);
  if (!rep.pass) throw DomainError("sample is not a hinge set: " + rep.summary());

  for (const auto& f : fixed) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : h.q) best = std::min(best, gap_distance(f, q));
    if (best > vtol)
      throw DomainError("sample is not a hinge set (stray fixed point, gap " + fmt(best) + ")");
  }
  return h;
}

bool hinges_equal_mod_scale(const Hinge& a, const Hinge& b, double tol, double rank_tol) {
  if (a.field != b.field || a.n != b.n || a.k() != b.k()) return false;
  if (a.q.size() != b.q.size()) return false;
  for (int j = 0; j < a.k(); ++j)
    if (!equal_mod_scale(a.p[j], b.p[j], tol, rank_tol)) return false;
  for (std::size_t j = 0; j < a.q.size(); ++j)
    if (gap_distance(a.q[j], b.q[j]) > tol) return false;
  return true;
}

}  // namespace hinges
