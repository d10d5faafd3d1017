#include "hinges/linrel.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace hinges {

namespace {

struct RangeNull {
  Mat range;      // orthonormal basis of the column span
  Mat null_basis; // orthonormal basis of the (right) null space
};

// Range and null space of an n x d block at the relative cutoff.
RangeNull range_and_null(Field field, const Mat& block, double rank_tol) {
  RangeNull out;
  const int d = static_cast<int>(block.cols());
  if (d == 0) {
    out.range = Mat(block.rows(), 0);
    out.null_basis = Mat(0, 0);
    return out;
  }
  if (field == Field::Real) {
    Eigen::JacobiSVD<RMat> svd(block.real(), Eigen::ComputeThinU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double top = sv.size() ? sv(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > rank_tol * top) ++rank;
    out.range = Mat::Zero(block.rows(), rank);
    out.range.real() = svd.matrixU().leftCols(rank);
    out.null_basis = Mat::Zero(d, d - rank);
    out.null_basis.real() = svd.matrixV().rightCols(d - rank);
    return out;
  }
  Eigen::JacobiSVD<Mat> svd(block, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double top = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * top) ++rank;
  out.range = svd.matrixU().leftCols(rank);
  out.null_basis = svd.matrixV().rightCols(d - rank);
  return out;
}

// Fixed-point relation K (+) I as a subspace of C^n (+) C^n.
Subspace direct_sum_relation(const Subspace& k, const Subspace& i) {
  const int n = k.ambient();
  Mat frame = Mat::Zero(2 * n, k.dim() + i.dim());
  frame.block(0, 0, n, k.dim()) = k.frame();
  frame.block(n, k.dim(), n, i.dim()) = i.frame();
  return Subspace(k.field(), 2 * n, frame);
}

}  // namespace

LinearRelation LinearRelation::from_subspace(const Subspace& v, double rank_tol) {
  if (v.ambient() % 2 != 0) throw DomainError("relation ambient dimension must be even");
  const int n = v.ambient() / 2;
  if (v.dim() != n) throw DomainError("relation must have dimension half the ambient space");
  LinearRelation r;
  r.space_ = v;
  r.n_ = n;
  Mat a = v.frame().topRows(n);
  Mat b = v.frame().bottomRows(n);
  RangeNull rb = range_and_null(v.field(), b, rank_tol);
  RangeNull ra = range_and_null(v.field(), a, rank_tol);
  r.im_ = Subspace(v.field(), n, rb.range);
  r.ker_ = Subspace::span(v.field(), n, Mat(a * rb.null_basis), rank_tol);
  r.dom_ = Subspace(v.field(), n, ra.range);
  r.indef_ = Subspace::span(v.field(), n, Mat(b * ra.null_basis), rank_tol);
  return r;
}

// In the right singular basis of A the graph columns [w_j; sigma_j u_j] are
// mutually orthogonal, so the frame needs only a per-column scaling.  A QR of
// the stacked [I; A] would instead face condition number ~sigma_max(A), which
// for a strongly scaled matrix shreds the small principal directions.
LinearRelation LinearRelation::graph(Field field, const Mat& a) {
  if (a.rows() != a.cols()) throw DomainError("graph needs a square matrix");
  if (field == Field::Real && a.imag().cwiseAbs().maxCoeff() > 0)
    throw DomainError("real-field matrix has complex entries");
  const int n = static_cast<int>(a.rows());
  Mat u, w;
  RVec sv;
  if (field == Field::Real) {
    Eigen::JacobiSVD<RMat> svd(a.real(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    u = Mat::Zero(n, n);
    u.real() = svd.matrixU();
    w = Mat::Zero(n, n);
    w.real() = svd.matrixV();
    sv = svd.singularValues();
  } else {
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u = svd.matrixU();
    w = svd.matrixV();
    sv = svd.singularValues();
  }
  Mat frame(2 * n, n);
  for (int j = 0; j < n; ++j) {
    const double s = sv(j);
    const double inv = 1.0 / std::hypot(1.0, s);
    frame.col(j).head(n) = inv * w.col(j);
    frame.col(j).tail(n) = (s * inv) * u.col(j);
  }
  return from_subspace(Subspace(field, 2 * n, frame));
}

double gap_distance(const LinearRelation& u, const LinearRelation& v) {
  return gap_distance(u.space(), v.space());
}

struct ThinSvd {
  Mat u, v;
  RVec s;
};

ThinSvd thin_svd(Field field, const Mat& m) {
  ThinSvd out;
  if (field == Field::Real) {
    Eigen::JacobiSVD<RMat> svd(m.real(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.u = Mat::Zero(m.rows(), svd.matrixU().cols());
    out.u.real() = svd.matrixU();
    out.v = Mat::Zero(m.cols(), svd.matrixV().cols());
    out.v.real() = svd.matrixV();
    out.s = svd.singularValues();
  } else {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.u = svd.matrixU();
    out.v = svd.matrixV();
    out.s = svd.singularValues();
  }
  return out;
}

// The scaled frame is assembled in the right singular basis of the smaller
// half of the frame.  Either half's basis diagonalizes both Grams (the two
// sum to the identity), so the columns stay mutually orthogonal and only need
// a per-column rescale.  The choice of half matters numerically: near a
// scaling limit the larger half's singular values crush together
// quadratically and its computed basis smears the per-column norms, while the
// smaller half keeps them linearly separated.  The quadruple pins the
// structural columns at any modulus: kernel columns carry the whole top,
// indeterminacy columns the whole bottom.
Subspace scale_space(cplx lam, const LinearRelation& v) {
  if (lam == cplx(0.0, 0.0)) throw DomainError("scaling by zero is not a group element");
  if (v.field() == Field::Real && lam.imag() != 0.0)
    throw DomainError("real relation scaled by a complex number");
  const int n = v.n();
  const Mat a = v.top_block();
  const Mat b = v.bottom_block();
  const int id = v.indef().dim();
  const int kd = v.ker().dim();

  const bool use_top = a.squaredNorm() <= b.squaredNorm();
  const ThinSvd dec = thin_svd(v.field(), use_top ? a : b);
  const Mat& other = use_top ? b : a;
  // Descending order puts the structural full-norm columns of the decomposed
  // half first and its zero-norm columns last.
  const int lead = use_top ? kd : id;
  const int tail = use_top ? id : kd;

  const double mod2 = std::norm(lam);
  Mat frame = Mat::Zero(2 * n, n);
  for (int j = 0; j < n; ++j) {
    double d = j < dec.s.size() ? dec.s(j) : 0.0;
    if (j < lead) d = 1.0;
    if (j >= n - tail) d = 0.0;
    const Vec cross = j < lead ? Vec(Vec::Zero(n)) : Vec(other * dec.v.col(j));
    const double e = cross.norm();
    const double c = use_top ? d : e;
    const double s = use_top ? e : d;
    const double denom = std::sqrt(c * c + mod2 * s * s);
    if (use_top) {
      if (d > 0.0) frame.col(j).head(n) = (d / denom) * dec.u.col(j);
      if (e > 0.0) frame.col(j).tail(n) = (lam / denom) * cross;
    } else {
      if (e > 0.0) frame.col(j).head(n) = cross / denom;
      if (d > 0.0) frame.col(j).tail(n) = (lam * d / denom) * dec.u.col(j);
    }
  }
  return Subspace(v.field(), 2 * n, frame);
}

LinearRelation scale_relation(cplx lam, const LinearRelation& v) {
  // The action fixes kernel, image, domain and indeterminacy pointwise, so the
  // quadruple is carried over instead of being re-derived; rank decisions on
  // the scaled frame would misread it at extreme moduli.
  LinearRelation r;
  r.space_ = scale_space(lam, v);
  r.n_ = v.n_;
  r.ker_ = v.ker_;
  r.im_ = v.im_;
  r.dom_ = v.dom_;
  r.indef_ = v.indef_;
  return r;
}

InducedOperator induced_operator(const LinearRelation& v, double rank_tol) {
  InducedOperator op;
  Subspace dq = complement_within(v.ker(), v.dom(), rank_tol);
  Subspace iq = complement_within(v.indef(), v.im(), rank_tol);
  if (dq.dim() != iq.dim())
    throw DomainError("relation quotient dimensions inconsistent");
  const int r = dq.dim();
  op.dom_basis = dq.frame();
  op.im_basis = iq.frame();
  op.partners = Mat(v.n(), r);
  op.matrix = Mat(r, r);
  if (r == 0) return op;

  Mat a = v.top_block();
  Mat b = v.bottom_block();
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(rank_tol);
  for (int j = 0; j < r; ++j) {
    Vec x = svd.solve(op.dom_basis.col(j));
    op.partners.col(j) = b * x;
  }
  op.matrix = op.im_basis.adjoint() * op.partners;
  Eigen::JacobiSVD<Mat> check(op.matrix);
  const auto& sv = check.singularValues();
  if (sv(sv.size() - 1) <= rank_tol * sv(0))
    throw DomainError("relation does not induce an invertible operator");
  return op;
}

bool is_scaling_fixed(const LinearRelation& v, double tol) {
  if (v.ker().dim() + v.indef().dim() != v.n()) return false;
  return gap_distance(v.space(), direct_sum_relation(v.ker(), v.indef())) <= tol;
}

LinearRelation ker_indef_relation(const LinearRelation& v, double rank_tol) {
  if (v.ker().dim() + v.indef().dim() != v.n())
    throw DomainError("kernel and indefiniteness do not span a relation");
  return LinearRelation::from_subspace(direct_sum_relation(v.ker(), v.indef()), rank_tol);
}

LinearRelation shrink_limit(const LinearRelation& v, double rank_tol) {
  return LinearRelation::from_subspace(direct_sum_relation(v.dom(), v.indef()), rank_tol);
}

LinearRelation blowup_limit(const LinearRelation& v, double rank_tol) {
  return LinearRelation::from_subspace(direct_sum_relation(v.ker(), v.im()), rank_tol);
}

bool equal_mod_scale(const LinearRelation& p, const LinearRelation& q, double tol,
                     double rank_tol) {
  if (p.field() != q.field() || p.n() != q.n()) return false;
  if (p.ker().dim() != q.ker().dim() || p.im().dim() != q.im().dim() ||
      p.dom().dim() != q.dom().dim() || p.indef().dim() != q.indef().dim())
    return false;
  const double pre = std::max(tol, 1e-6);
  if (gap_distance(p.ker(), q.ker()) > pre) return false;
  if (gap_distance(p.im(), q.im()) > pre) return false;
  if (gap_distance(p.dom(), q.dom()) > pre) return false;
  if (gap_distance(p.indef(), q.indef()) > pre) return false;

  const bool pf = is_scaling_fixed(p, std::max(tol, kGapTol));
  const bool qf = is_scaling_fixed(q, std::max(tol, kGapTol));
  if (pf != qf) return false;
  if (pf) return gap_distance(p, q) <= tol;

  InducedOperator mp = induced_operator(p, rank_tol);
  InducedOperator mq = induced_operator(q, rank_tol);
  // Express q's operator in p's quotient bases before reading off the scalar.
  Mat aligned = (mp.im_basis.adjoint() * mq.im_basis) * mq.matrix *
                (mq.dom_basis.adjoint() * mp.dom_basis);
  int bi = 0, bj = 0;
  mp.matrix.cwiseAbs().maxCoeff(&bi, &bj);
  cplx denom = mp.matrix(bi, bj);
  cplx numer = aligned(bi, bj);
  if (std::abs(denom) == 0.0 || std::abs(numer) == 0.0) return false;
  cplx lam = numer / denom;
  if (p.field() == Field::Real) lam = cplx(lam.real(), 0.0);
  if (std::abs(lam) == 0.0) return false;
  return gap_distance(scale_relation(lam, p), q) <= tol;
}

}  // namespace hinges
