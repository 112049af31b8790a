#include "pk/moebius.hpp"

#include <cmath>

namespace pk {

namespace {

void check_z0(Complex z0) {
  if (std::abs(z0) - 1.0 < 0.1)
    throw std::invalid_argument(
        "moebius: |z0| must exceed 1.1 for a well-conditioned transform");
}

Matrix pairing_matrix(Complex z0, int n) {
  // (h, h') -> (h' - z0 h, h - conj(z0) h') on stacked pair coordinates.
  Matrix w = Matrix::Zero(2 * n, 2 * n);
  w.topLeftCorner(n, n) = -z0 * Matrix::Identity(n, n);
  w.topRightCorner(n, n) = Matrix::Identity(n, n);
  w.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  w.bottomRightCorner(n, n) = -std::conj(z0) * Matrix::Identity(n, n);
  return w;
}

}  // namespace

LinearRelation transform_relation(const LinearRelation& rel, Complex z0) {
  check_z0(z0);
  Complex c = 1.0 - std::norm(z0);
  return rel.shift(z0).inverse().scale(c).shift(std::conj(z0));
}

IsometryInstance transform_operator(const IsometryInstance& inst, Complex z0) {
  check_z0(z0);
  PencilSpectrum sp = inst.v.pencil_spectrum();
  for (Complex l : sp.eigenvalues)
    if (std::abs(l - z0) <= 1e-9)
      throw SingularShift("transform_operator: z0 is an eigenvalue of V");
  LinearRelation v0 = transform_relation(inst.v, z0);
  if (v0.mul().dim() > 0)
    throw SingularShift("transform_operator: transform has a multivalued part");
  return IsometryInstance(inst.space, v0, inst.label + "/moebius");
}

Complex param_map(Complex lambda, Complex z0) {
  if (std::abs(lambda - z0) < 1e-12)
    throw SingularShift("param_map: lambda at the pole z0");
  return (1.0 - std::conj(z0) * lambda) / (lambda - z0);
}

Complex param_map_inverse(Complex zeta, Complex z0) {
  if (std::abs(zeta + std::conj(z0)) < 1e-12)
    throw SingularShift("param_map_inverse: zeta at the pole -conj(z0)");
  return (1.0 + zeta * z0) / (std::conj(z0) + zeta);
}

MoebiusContext transform_triplet(const BoundaryTriplet& t, Complex z0) {
  IsometryInstance inst0 = transform_operator(t.inst(), z0);
  int n = t.inst().space.dim();
  Matrix w = pairing_matrix(z0, n);

  LinearRelation vs0 = vstar(inst0);
  Subspace mapped = t.vstar().graph().map(w, 2 * n);
  if (mapped.distance(vs0.graph()) > 1e-8)
    throw std::runtime_error(
        "transform_triplet: transported adjoint graph mismatch");

  // Coordinates of the source pair behind each transformed basis column.
  Matrix w_inv = w.inverse();
  Matrix coords =
      t.vstar().graph().basis().adjoint() * w_inv * vs0.graph().basis();
  double s = std::sqrt(std::norm(z0) - 1.0);
  Matrix g10 = s * t.g1() * coords;
  Matrix g20 = s * t.g2() * coords;
  BoundaryTriplet t0(std::move(inst0), std::move(vs0), t.n1(), t.n2(),
                     std::move(g10), std::move(g20), t.kappa1());
  return MoebiusContext{z0, t, std::move(t0)};
}

TransformLawReport transform_laws(const MoebiusContext& ctx, Complex lambda) {
  TransformLawReport r;
  r.zeta = param_map(lambda, ctx.z0);
  int j = std::abs(lambda) > 1.0 ? 1 : 2;
  Matrix m = weyl(ctx.source, j, lambda);
  Matrix m0 = weyl(ctx.transformed, j, r.zeta);
  r.m_residual = m.size() ? (m0 - m).cwiseAbs().maxCoeff() : 0.0;
  double s = std::sqrt(std::norm(ctx.z0) - 1.0);
  Complex factor = (lambda - ctx.z0) / s;
  Matrix g = gamma(ctx.source, j, lambda);
  Matrix g0 = gamma(ctx.transformed, j, r.zeta);
  r.gamma_residual =
      g.size() ? (g0 - factor * g).cwiseAbs().maxCoeff() : 0.0;
  return r;
}

double rr_residual(const LinearRelation& vtilde, Complex z0, Complex lambda) {
  check_z0(z0);
  Complex zeta = param_map(lambda, z0);
  LinearRelation v0 = transform_relation(vtilde, z0);
  Matrix lhs = v0.resolvent(zeta);
  int n = vtilde.from().dim();
  Complex factor = (lambda - z0) / (std::norm(z0) - 1.0);
  Matrix rhs = factor * (Matrix::Identity(n, n) +
                         (lambda - z0) * vtilde.resolvent(lambda));
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace pk
