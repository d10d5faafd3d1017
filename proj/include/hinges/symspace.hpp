#pragma once

#include "hinges/hinge.hpp"

namespace hinges {

// R^n (+) R^n with the standard skew form ((0, I), (-I, 0)).
struct SymplecticAmbient {
  int n = 0;
  RMat form() const;
};

// Largest entry of frame^T J frame; zero exactly on Lagrangian subspaces.
double lagrangian_residual(const Subspace& v, const SymplecticAmbient& amb);

bool is_lagrangian(const Subspace& v, const SymplecticAmbient& amb, double tol = kGapTol);

// g acting on symmetric matrices by S -> g^T S g.
RMat congruence_act(const RMat& g, const RMat& s);

// The same action on relations: graphs transform by ((g^{-1}, 0), (0, g^T)).
LinearRelation congruence_act_relation(const RMat& g, const LinearRelation& v,
                                       double rank_tol = kRankTol);

// Matrix of the quotient pairing (dom basis vector, image partner) in the
// stored orthonormal basis, symmetrized; symmetric exactly when the relation
// is Lagrangian, and congruent to S for the graph of a symmetric S.
struct PairingSummary {
  RMat matrix;
  double skew_residual = 0.0;
  RVec eigenvalues;  // ascending
};

PairingSummary pairing_of(const LinearRelation& v, double rank_tol = kRankTol);

struct PDHingeReport {
  HingeReport report;
  std::vector<double> lagrangian_residuals;  // chain order Q_0, P_1, Q_1, ...
  std::vector<RVec> block_eigenvalues;       // one entry per moving component
  bool pass() const { return report.pass; }
};

// validate_hinge plus per-component Lagrangian residuals and the eigenvalue
// floor lambda_min >= 1e-8 * lambda_max on every moving component's pairing.
PDHingeReport validate_pd_hinge(const Hinge& h, double tol = kGapTol);

using SymmetricFamily = std::function<RMat(double)>;

// Boundary hinge of a positive definite symmetric family: the scaling limit of
// the graphs, which must come out Lagrangian with positive pairings.  The
// default tol budgets for the O(1/t) settling rate of congruence-moved
// families at the last probe; identities inside the result are still checked
// at kGapTol.
Hinge pd_boundary_hinge(const SymmetricFamily& family, const std::vector<double>& probes,
                        double tol = 1e-4, double rank_tol = kRankTol);

}  // namespace hinges
