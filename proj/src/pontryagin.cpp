#include "pk/pontryagin.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace pk {

namespace {
constexpr double kRankRel = 1e-9;
}

PontryaginSpace::PontryaginSpace(Matrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols())
    throw DimensionMismatch("Gram matrix must be square");
  if (gram_.size() > 0 &&
      (gram_ - gram_.adjoint()).cwiseAbs().maxCoeff() > tol())
    throw std::invalid_argument("Gram matrix must be Hermitian");
  gram_ = Complex(0.5) * (gram_ + Matrix(gram_.adjoint()));
  if (gram_.rows() == 0) {
    gram_inv_ = gram_;
    return;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram_);
  const RealVector& ev = es.eigenvalues();
  if (ev.cwiseAbs().minCoeff() <= tol())
    throw std::invalid_argument("Gram matrix must be invertible");
  neg_index_ = static_cast<int>((ev.array() < 0.0).count());
  gram_inv_ = gram_.inverse();
}

PontryaginSpace PontryaginSpace::hilbert(int dim) {
  return PontryaginSpace(Matrix::Identity(dim, dim));
}

PontryaginSpace PontryaginSpace::diagonal(int pos, int neg) {
  Matrix j = Matrix::Identity(pos + neg, pos + neg);
  for (int i = pos; i < pos + neg; ++i) j(i, i) = -1.0;
  return PontryaginSpace(j);
}

Complex PontryaginSpace::inner(const Vector& x, const Vector& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw DimensionMismatch("inner: vector length must equal space dimension");
  return (y.adjoint() * gram_ * x)(0, 0);
}

Matrix PontryaginSpace::gram_solve(const Matrix& m) const {
  return gram_inv_ * m;
}

bool PontryaginSpace::same_as(const PontryaginSpace& other) const {
  return dim() == other.dim() &&
         (dim() == 0 ||
          (gram_ - other.gram_).cwiseAbs().maxCoeff() <= tol());
}

Subspace::Subspace(int ambient_dim, const Matrix& vectors)
    : ambient_dim_(ambient_dim) {
  if (vectors.cols() == 0 || vectors.rows() == 0) {
    basis_ = Matrix(ambient_dim, 0);
    return;
  }
  if (vectors.rows() != ambient_dim)
    throw DimensionMismatch("Subspace: spanning vectors have wrong length");
  Eigen::JacobiSVD<Matrix> svd(vectors, Eigen::ComputeThinU);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > std::max(kRankRel * smax, 1e-12)) ++rank;
  basis_ = svd.matrixU().leftCols(rank);
}

Subspace Subspace::zero(int ambient_dim) {
  return Subspace(ambient_dim, Matrix(ambient_dim, 0));
}

Subspace Subspace::full(int ambient_dim) {
  return Subspace(ambient_dim, Matrix::Identity(ambient_dim, ambient_dim));
}

bool Subspace::contains(const Vector& v) const {
  double n = v.norm();
  if (n <= tol()) return true;
  return ((v - projector() * v).norm() / n) <= 1e-9;
}

bool Subspace::contains(const Subspace& other) const {
  if (other.dim() == 0) return true;
  Matrix r = other.basis() - projector() * other.basis();
  return r.cwiseAbs().maxCoeff() <= 1e-9;
}

bool Subspace::equals(const Subspace& other) const {
  return distance(other) <= 1e-9;
}

double Subspace::distance(const Subspace& other) const {
  if (ambient_dim_ != other.ambient_dim_)
    throw DimensionMismatch("Subspace::distance: ambient dimensions differ");
  if (ambient_dim_ == 0) return 0.0;
  return (projector() - other.projector()).cwiseAbs().maxCoeff();
}

Subspace Subspace::intersect(const Subspace& other) const {
  // x lies in both spans iff both complement projectors annihilate it.
  Matrix stacked(2 * ambient_dim_, ambient_dim_);
  stacked.topRows(ambient_dim_) =
      Matrix::Identity(ambient_dim_, ambient_dim_) - projector();
  stacked.bottomRows(ambient_dim_) =
      Matrix::Identity(ambient_dim_, ambient_dim_) - other.projector();
  return kernel(stacked);
}

Subspace Subspace::add(const Subspace& other) const {
  Matrix joined(ambient_dim_, dim() + other.dim());
  joined.leftCols(dim()) = basis_;
  joined.rightCols(other.dim()) = other.basis();
  return Subspace(ambient_dim_, joined);
}

Subspace Subspace::complement() const {
  return kernel(Matrix(basis_.adjoint()));
}

Subspace Subspace::complement_within(const Subspace& other) const {
  // this must contain other; returns this ∩ other^perp.
  return intersect(other.complement());
}

Subspace Subspace::map(const Matrix& a, int target_dim) const {
  if (a.cols() != ambient_dim_)
    throw DimensionMismatch("Subspace::map: matrix column count mismatch");
  return Subspace(target_dim, a * basis_);
}

Subspace Subspace::preimage(const Matrix& a, int source_dim) const {
  if (a.cols() != source_dim)
    throw DimensionMismatch("Subspace::preimage: matrix shape mismatch");
  // Ax in span(basis)  <=>  (I - P) A x = 0.
  Matrix p = projector();
  Matrix m = a - p * a;
  return kernel(m);
}

Subspace Subspace::kernel(const Matrix& a) {
  int n = static_cast<int>(a.cols());
  if (a.rows() == 0 || a.cols() == 0) return full(n);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > std::max(kRankRel * smax, 1e-12)) ++rank;
  return Subspace(n, svd.matrixV().rightCols(n - rank));
}

Signature subspace_signature(const PontryaginSpace& space, const Subspace& s) {
  Matrix g = s.basis().adjoint() * space.gram() * s.basis();
  Signature sig;
  if (g.size() == 0) return sig;
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double e = es.eigenvalues()(i);
    if (e > tol())
      ++sig.pos;
    else if (e < -tol())
      ++sig.neg;
    else
      ++sig.iso;
  }
  return sig;
}

Subspace ortho_companion(const PontryaginSpace& space, const Subspace& s) {
  // [x,y] = (Jx)^* y = 0 for all x in S  <=>  y ⟂ J·S in the Euclidean sense.
  Matrix constraints = (space.gram() * s.basis()).adjoint();
  return Subspace::kernel(constraints);
}

Matrix indef_adjoint(const Matrix& a, const PontryaginSpace& from,
                     const PontryaginSpace& to) {
  if (a.cols() != from.dim() || a.rows() != to.dim())
    throw DimensionMismatch("indef_adjoint: matrix shape mismatch");
  return from.gram_solve(a.adjoint() * to.gram());
}

int count_negative_eigenvalues(const Matrix& hermitian) {
  if (hermitian.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      Complex(0.5) * (hermitian + Matrix(hermitian.adjoint())));
  int n = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) < -tol()) ++n;
  return n;
}

}  // namespace pk
