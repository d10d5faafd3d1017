#pragma once

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hinges/linrel.hpp"

#include <random>

namespace hinges::testing {

inline Mat gaussian(std::mt19937_64& rng, Field field, int rows, int cols) {
  std::normal_distribution<double> dist;
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = field == Field::Real ? cplx(dist(rng), 0.0) : cplx(dist(rng), dist(rng));
  return m;
}

// Haar-ish unitary (orthogonal over the reals): QR of a Gaussian matrix with
// the R diagonal phases absorbed.
inline Mat random_unitary(std::mt19937_64& rng, Field field, int n) {
  const Mat g = gaussian(rng, field, n, n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline Subspace random_subspace(std::mt19937_64& rng, Field field, int ambient, int dim) {
  return Subspace::span(field, ambient, gaussian(rng, field, ambient, dim));
}

inline LinearRelation random_relation(std::mt19937_64& rng, Field field, int n) {
  return LinearRelation::from_subspace(random_subspace(rng, field, 2 * n, n));
}

// Relation with prescribed kernel and indeterminacy dimensions: a kernel
// block, an indeterminacy block and an invertible graph on the rest, all
// conjugated by a random unitary pair.
inline LinearRelation structured_relation(std::mt19937_64& rng, Field field, int n, int ker_dim,
                                          int indef_dim) {
  const int r = n - ker_dim - indef_dim;
  Mat frame = Mat::Zero(2 * n, n);
  frame.block(0, 0, ker_dim, ker_dim) = Mat::Identity(ker_dim, ker_dim);
  frame.block(n, ker_dim, indef_dim, indef_dim) = Mat::Identity(indef_dim, indef_dim);
  if (r > 0) {
    Mat a = gaussian(rng, field, r, r);
    a += 3.0 * Mat::Identity(r, r);  // keeps the block comfortably invertible
    frame.block(ker_dim, ker_dim + indef_dim, r, r) = Mat::Identity(r, r);
    frame.block(n + indef_dim, ker_dim + indef_dim, r, r) = a;
  }
  const Mat u = random_unitary(rng, field, n);
  const Mat w = random_unitary(rng, field, n);
  Mat big = Mat::Zero(2 * n, 2 * n);
  big.topLeftCorner(n, n) = u;
  big.bottomRightCorner(n, n) = w;
  return LinearRelation::from_subspace(Subspace::span(field, 2 * n, big * frame));
}

// Span of explicit column vectors given row-major as initializer lists.
inline Subspace subspace_of(Field field, int ambient,
                            const std::vector<std::vector<cplx>>& cols) {
  Mat m(ambient, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < ambient; ++i) m(i, j) = cols[j][i];
  return Subspace::span(field, ambient, m);
}

// The running n = 2 chain: first factor, the graph limit pieces and the
// second factor, in coordinates (h1, h2, p1, p2).
inline Subspace v1() {
  return subspace_of(Field::Complex, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
}
inline Subspace v2() {
  return subspace_of(Field::Complex, 4, {{1, 0, 0, 0}, {0, 1, 0, 1}});
}
inline Subspace v3() {
  return subspace_of(Field::Complex, 4, {{1, 0, 0, 0}, {0, 0, 0, 1}});
}
inline Subspace v4() {
  return subspace_of(Field::Complex, 4, {{1, 0, 1, 0}, {0, 0, 0, 1}});
}
inline Subspace v5() {
  return subspace_of(Field::Complex, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}});
}

inline LinearRelation rel(const Subspace& s) { return LinearRelation::from_subspace(s); }

}  // namespace hinges::testing
