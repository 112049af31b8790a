#pragma once

#include "pk/types.hpp"

namespace pk {

/// Finite-dimensional complex space carrying a Hermitian invertible Gram
/// matrix J. The indefinite product is [x,y] = y^* J x; the negative index
/// kappa counts the negative eigenvalues of J.
class PontryaginSpace {
 public:
  explicit PontryaginSpace(Matrix gram);

  /// Hilbert space of the given dimension (J = I).
  static PontryaginSpace hilbert(int dim);
  /// Diagonal Gram with `pos` entries +1 followed by `neg` entries -1.
  static PontryaginSpace diagonal(int pos, int neg);

  int dim() const { return static_cast<int>(gram_.rows()); }
  const Matrix& gram() const { return gram_; }
  int neg_index() const { return neg_index_; }

  Complex inner(const Vector& x, const Vector& y) const;

  /// J^{-1} applied to a matrix (used by indefinite adjoints).
  Matrix gram_solve(const Matrix& m) const;

  bool same_as(const PontryaginSpace& other) const;

 private:
  Matrix gram_;
  Matrix gram_inv_;
  int neg_index_ = 0;
};

/// A subspace stored by a Euclidean-orthonormal basis. Canonicalized on
/// construction via SVD with a relative rank threshold, so two values with
/// equal column span compare equal through their projectors.
class Subspace {
 public:
  /// Span of the columns of `vectors` inside a space of dimension ambient_dim.
  Subspace(int ambient_dim, const Matrix& vectors);

  static Subspace zero(int ambient_dim);
  static Subspace full(int ambient_dim);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }

  /// Euclidean orthoprojector onto the subspace; basis independent.
  Matrix projector() const { return basis_ * basis_.adjoint(); }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  bool equals(const Subspace& other) const;
  double distance(const Subspace& other) const;

  Subspace intersect(const Subspace& other) const;
  Subspace add(const Subspace& other) const;
  /// Euclidean orthogonal complement.
  Subspace complement() const;
  /// Euclidean complement of `other` inside this subspace.
  Subspace complement_within(const Subspace& other) const;

  /// Image under a matrix into a space of dimension target_dim.
  Subspace map(const Matrix& a, int target_dim) const;
  /// Preimage {x : Ax in this} for a matrix a acting from source_dim.
  Subspace preimage(const Matrix& a, int source_dim) const;

  /// Null space of a matrix, as a subspace of its column dimension.
  static Subspace kernel(const Matrix& a);

 private:
  int ambient_dim_;
  Matrix basis_;  // ambient_dim x k, orthonormal columns
};

struct Signature {
  int pos = 0;
  int neg = 0;
  int iso = 0;  // isotropic part: |eigenvalue| <= tol
  bool nondegenerate() const { return iso == 0; }
};

Signature subspace_signature(const PontryaginSpace& space, const Subspace& s);

/// S^{[perp]} = {y : [x,y] = 0 for all x in S}.
Subspace ortho_companion(const PontryaginSpace& space, const Subspace& s);

/// A^{[*]} = J_from^{-1} A^* J_to for A : from -> to.
Matrix indef_adjoint(const Matrix& a, const PontryaginSpace& from,
                     const PontryaginSpace& to);

/// Negative eigenvalue count of a Hermitian matrix, zeros within tol ignored.
int count_negative_eigenvalues(const Matrix& hermitian);

}  // namespace pk
