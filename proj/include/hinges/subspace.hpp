#pragma once

#include "hinges/types.hpp"

namespace hinges {

// A linear subspace of C^m (or R^m), stored as an orthonormal column frame.
// Real-field subspaces keep exactly zero imaginary parts in the frame.
class Subspace {
public:
  Subspace() = default;
  Subspace(Field field, int ambient, Mat frame);

  // Column span of `cols` with rank decided at rank_tol relative to the top singular value.
  static Subspace span(Field field, int ambient, const Mat& cols, double rank_tol = kRankTol);
  static Subspace zero(Field field, int ambient);
  static Subspace full(Field field, int ambient);

  Field field() const { return field_; }
  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(frame_.cols()); }
  const Mat& frame() const { return frame_; }

  // Orthogonal projection of v onto the subspace.
  Vec project(const Vec& v) const { return frame_ * (frame_.adjoint() * v); }

private:
  Field field_ = Field::Complex;
  int ambient_ = 0;
  Mat frame_;  // ambient x dim
};

// Operator norm of the difference of the two orthogonal projectors.
// Equals the sine of the largest principal angle when dims agree, 1 otherwise.
double gap_distance(const Subspace& u, const Subspace& v);

Subspace sum(const Subspace& u, const Subspace& v, double rank_tol = kRankTol);

// Intersection via the null space of the stacked frame [F_u | -F_v].
Subspace intersect(const Subspace& u, const Subspace& v, double rank_tol = kRankTol);

// Orthogonal complement of `inner` within `outer`; requires inner to lie in outer.
Subspace complement_within(const Subspace& inner, const Subspace& outer,
                           double rank_tol = kRankTol);

// Every frame vector of `small` is within tol of `big`.
bool contains(const Subspace& big, const Subspace& small, double tol);

// Re-orthonormalizes real or complex columns respecting the field tag.
Mat orthonormalize(Field field, const Mat& cols, double rank_tol = kRankTol);

}  // namespace hinges
