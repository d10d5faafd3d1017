#include "hinges/subspace.hpp"

#include <Eigen/SVD>

namespace hinges {

namespace {

// Rank-revealing orthonormal basis of the column span.  Runs in real arithmetic for
// the real field so real frames stay exactly real.
Mat span_frame(Field field, const Mat& cols, double rank_tol) {
  if (cols.cols() == 0) return Mat(cols.rows(), 0);
  if (field == Field::Real) {
    RMat rc = cols.real();
    Eigen::JacobiSVD<RMat> svd(rc, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    double top = sv.size() ? sv(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > rank_tol * top) ++rank;
    Mat out = Mat::Zero(cols.rows(), rank);
    out.real() = svd.matrixU().leftCols(rank);
    return out;
  }
  Eigen::JacobiSVD<Mat> svd(cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double top = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * top) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

Subspace::Subspace(Field field, int ambient, Mat frame)
    : field_(field), ambient_(ambient), frame_(std::move(frame)) {
  if (frame_.rows() != ambient_) throw DomainError("subspace frame has wrong ambient dimension");
}

Subspace Subspace::span(Field field, int ambient, const Mat& cols, double rank_tol) {
  if (cols.cols() > 0 && cols.rows() != ambient)
    throw DomainError("subspace columns have wrong ambient dimension");
  if (cols.cols() == 0) return zero(field, ambient);
  return Subspace(field, ambient, span_frame(field, cols, rank_tol));
}

Subspace Subspace::zero(Field field, int ambient) {
  return Subspace(field, ambient, Mat(ambient, 0));
}

Subspace Subspace::full(Field field, int ambient) {
  return Subspace(field, ambient, Mat::Identity(ambient, ambient));
}

double gap_distance(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient() || u.field() != v.field())
    throw DomainError("gap_distance needs subspaces of one ambient space");
  if (u.dim() != v.dim()) return 1.0;
  if (u.dim() == 0) return 0.0;
  // Singular values of (I - P_u) V are the sines of the principal angles.
  // The cosine route through sqrt(1 - c^2) keeps only half the digits near 0.
  Mat resid = v.frame() - u.frame() * (u.frame().adjoint() * v.frame());
  Eigen::JacobiSVD<Mat> svd(resid);
  double s = svd.singularValues().maxCoeff();
  // Below the roundoff floor of the residual there is no distance to report;
  // collapsing it keeps the self-distance exactly zero.
  if (s < 1e-13) return 0.0;
  return std::min(1.0, s);
}

Subspace sum(const Subspace& u, const Subspace& v, double rank_tol) {
  if (u.ambient() != v.ambient() || u.field() != v.field())
    throw DomainError("sum needs subspaces of one ambient space");
  Mat cols(u.ambient(), u.dim() + v.dim());
  cols << u.frame(), v.frame();
  return Subspace::span(u.field(), u.ambient(), cols, rank_tol);
}

Subspace intersect(const Subspace& u, const Subspace& v, double rank_tol) {
  if (u.ambient() != v.ambient() || u.field() != v.field())
    throw DomainError("intersect needs subspaces of one ambient space");
  if (u.dim() == 0 || v.dim() == 0) return Subspace::zero(u.field(), u.ambient());
  Mat stacked(u.ambient(), u.dim() + v.dim());
  stacked << u.frame(), -v.frame();
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double top = sv(0);
  Mat meet(u.ambient(), 0);
  // Full V has stacked.cols() columns; the trailing ones beyond sv.size()
  // span the structural null space of a wide stack.
  for (int i = 0; i < svd.matrixV().cols(); ++i) {
    if (i >= sv.size() || sv(i) <= rank_tol * top) {
      Vec x = svd.matrixV().col(i).head(u.dim());
      meet.conservativeResize(Eigen::NoChange, meet.cols() + 1);
      meet.col(meet.cols() - 1) = u.frame() * x;
    }
  }
  return Subspace::span(u.field(), u.ambient(), meet, rank_tol);
}

Subspace complement_within(const Subspace& inner, const Subspace& outer, double rank_tol) {
  if (inner.ambient() != outer.ambient() || inner.field() != outer.field())
    throw DomainError("complement_within needs subspaces of one ambient space");
  Mat residual = outer.frame() - inner.frame() * (inner.frame().adjoint() * outer.frame());
  return Subspace::span(outer.field(), outer.ambient(), residual, rank_tol);
}

bool contains(const Subspace& big, const Subspace& small, double tol) {
  for (int i = 0; i < small.dim(); ++i) {
    Vec f = small.frame().col(i);
    if ((f - big.project(f)).norm() > tol) return false;
  }
  return true;
}

Mat orthonormalize(Field field, const Mat& cols, double rank_tol) {
  return span_frame(field, cols, rank_tol);
}

}  // namespace hinges
