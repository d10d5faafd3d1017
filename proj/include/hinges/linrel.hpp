#pragma once

#include "hinges/subspace.hpp"

#include <optional>

namespace hinges {

// The quotient map Dom V / Ker V -> Im V / Indef V carried by a relation,
// expressed in stored orthonormal bases of the two quotients.
struct InducedOperator {
  Mat dom_basis;   // n x r, orthonormal basis of Dom within Ker-orthocomplement
  Mat im_basis;    // n x r, orthonormal basis of Im within Indef-orthocomplement
  Mat partners;    // n x r, image-side partner vector for each dom basis vector
  Mat matrix;      // r x r, im_basis^H * partners; invertible
  bool empty() const { return matrix.rows() == 0; }
};

// An n-dimensional subspace V of C^n (+) C^n viewed as a linear relation.
// The four scaling-invariant subspaces live in the respective C^n factor.
class LinearRelation {
public:
  static LinearRelation from_subspace(const Subspace& v, double rank_tol = kRankTol);
  static LinearRelation graph(Field field, const Mat& a);

  Field field() const { return space_.field(); }
  int n() const { return n_; }
  const Subspace& space() const { return space_; }
  const Subspace& ker() const { return ker_; }
  const Subspace& im() const { return im_; }
  const Subspace& dom() const { return dom_; }
  const Subspace& indef() const { return indef_; }

  Mat top_block() const { return space_.frame().topRows(n_); }
  Mat bottom_block() const { return space_.frame().bottomRows(n_); }

private:
  LinearRelation() = default;
  friend LinearRelation scale_relation(cplx lam, const LinearRelation& v);
  Subspace space_;
  int n_ = 0;
  Subspace ker_, im_, dom_, indef_;
};

double gap_distance(const LinearRelation& u, const LinearRelation& v);

// The scaling action: (h, p) in V  iff  (h, lam p) in scale_relation(lam, V).
// The kernel quadruple is carried over unchanged; the action fixes all four
// subspaces, so no rank decision is involved.
LinearRelation scale_relation(cplx lam, const LinearRelation& v);
// The scaled subspace alone.
Subspace scale_space(cplx lam, const LinearRelation& v);

InducedOperator induced_operator(const LinearRelation& v, double rank_tol = kRankTol);

// Fixed points of the scaling action are exactly the relations Ker (+) Indef.
bool is_scaling_fixed(const LinearRelation& v, double tol = kGapTol);

// The relation Ker V (+) 0 + 0 (+) Indef V, i.e. the fixed point with V's kernel data.
LinearRelation ker_indef_relation(const LinearRelation& v, double rank_tol = kRankTol);

// True iff q = scale_relation(lam, p) for some nonzero scalar lam.
// For non-fixed relations lam is recovered from the aligned induced operators
// and certified by a gap check; fixed points compare by plain gap.
bool equal_mod_scale(const LinearRelation& p, const LinearRelation& q, double tol,
                     double rank_tol = kRankTol);

// Limit of lam*V as lam -> 0: Dom V (+) Indef V.
LinearRelation shrink_limit(const LinearRelation& v, double rank_tol = kRankTol);
// Limit of lam*V as lam -> infinity: Ker V (+) Im V.
LinearRelation blowup_limit(const LinearRelation& v, double rank_tol = kRankTol);

}  // namespace hinges
