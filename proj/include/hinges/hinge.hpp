#pragma once

#include "hinges/linrel.hpp"
#include "hinges/metric.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hinges {

// Boundary object for the scaling action: fixed relations Q_0..Q_k interleaved
// with moving components P_1..P_k, each P defined up to a scalar.
struct Hinge {
  Field field = Field::Complex;
  int n = 0;
  std::vector<LinearRelation> p;
  std::vector<LinearRelation> q;

  int k() const { return static_cast<int>(p.size()); }
};

struct AxiomCheck {
  std::string axiom;
  bool pass = true;
  double worst_gap = 0.0;
  std::vector<std::string> issues;
};

struct HingeReport {
  bool pass = true;
  std::vector<AxiomCheck> checks;
  std::string summary() const;
};

// Checks shape, fixedness of the Q's, mobility of the P's, the interleaving
// subspace equalities and the endpoint conditions.  Failures live in the report.
HingeReport validate_hinge(const Hinge& h, double tol = kGapTol, double rank_tol = kRankTol);
// Throws DomainError carrying the report summary when validation fails.
void require_valid_hinge(const Hinge& h, double tol = kGapTol, double rank_tol = kRankTol);

// Q_0 = full (+) 0, Q_k = 0 (+) full, interior Q_j = Ker P_j (+) Im P_j.
std::vector<LinearRelation> derive_q(const std::vector<LinearRelation>& p,
                                     double rank_tol = kRankTol);

Hinge hinge_with_derived_q(std::vector<LinearRelation> p, double rank_tol = kRankTol);

// The k = 1 hinge carried by the graph of an invertible matrix.
Hinge hinge_of_invertible(Field field, const Mat& a, double rank_tol = kRankTol);

// Scalars of the scaling grid: log-spaced moduli crossed with unit phases
// (complex), signs (real) or the positive ray only.
std::vector<cplx> scaling_grid(Field field, const GridSpec& grid);

// Sample of the closed set realizing the hinge: the fixed points plus the
// scaled copies of every moving component.  The resolution field reports the
// measured covering radius of the grid over midpoint and tail probes.
ClosedSetSample hinge_to_sample(const Hinge& h, const GridSpec& grid = {},
                                double rank_tol = kRankTol);

// Sample of the closure of the scaling orbit of an invertible graph, endpoint
// limits included.  Rejects relations outside the invertible-graph chart.
ClosedSetSample orbit_closure_sample(const LinearRelation& v, const GridSpec& grid = {},
                                     double rank_tol = kRankTol);

// Hausdorff limit of the orbit-closure samples along the family, resolved by
// tail clustering at tol.  A tail visiting two clusters repeatedly is rejected
// with "sequence has multiple limit classes".
ClosedSetSample limit_of_orbit_closures(Field field, const std::vector<Mat>& family,
                                        const GridSpec& grid, double tol,
                                        double rank_tol = kRankTol);

using MatrixFamily = std::function<Mat(double)>;

// Limit hinge of t -> g(t) read off at the largest probes: singular values are
// split into scale groups, each group is flattened to its limiting component,
// and the settled components are assembled and validated.  Grouping must agree
// at the two largest probes and each component must move by at most tol
// between them.
Hinge hinge_limit(Field field, const MatrixFamily& g, const std::vector<double>& probes,
                  double tol, double rank_tol = kRankTol);

// Classifies sample members into fixed points and one orbit cluster per moving
// component, orders the chain and validates; inverse of hinge_to_sample up to
// scale.  Non-hinge samples fail with "sample is not a hinge set".
Hinge extract_hinge_from_sample(const ClosedSetSample& n, double tol,
                                double rank_tol = kRankTol);

// Component-wise comparison: P's equal up to scalar, Q's equal in gap.
bool hinges_equal_mod_scale(const Hinge& a, const Hinge& b, double tol,
                            double rank_tol = kRankTol);

}  // namespace hinges
