#pragma once

#include "pk/weyl.hpp"

namespace pk {

/// Linear-fractional change of variable z0 with |z0| > 1:
/// V0 = (1 - |z0|^2)(V - z0)^{-1} - conj(z0) I, zeta = (1 - conj(z0) lambda)
/// / (lambda - z0). Carries the source triplet and its transport.
struct MoebiusContext {
  Complex z0;
  BoundaryTriplet source;
  BoundaryTriplet transformed;
};

/// Raw relation calculus behind the operator transform.
LinearRelation transform_relation(const LinearRelation& rel, Complex z0);

IsometryInstance transform_operator(const IsometryInstance& inst,
                                    Complex z0 = Complex(2.0, 0.0));

Complex param_map(Complex lambda, Complex z0);
Complex param_map_inverse(Complex zeta, Complex z0);

/// Transport the whole triplet: Gamma_j^0 = sqrt(|z0|^2 - 1) Gamma_j under
/// the pairing (h, h') -> (h' - z0 h, h - conj(z0) h').
MoebiusContext transform_triplet(const BoundaryTriplet& triplet,
                                 Complex z0 = Complex(2.0, 0.0));

struct TransformLawReport {
  Complex zeta;
  double m_residual = 0.0;
  double gamma_residual = 0.0;
};

/// Residuals of M_j^0(zeta) = M_j(lambda) and
/// gamma_j^0(zeta) = ((lambda - z0)/sqrt(|z0|^2-1)) gamma_j(lambda).
TransformLawReport transform_laws(const MoebiusContext& ctx, Complex lambda);

/// Residual of the resolvent identity
/// (V0 - zeta)^{-1} = ((lambda-z0)/(|z0|^2-1)) (I + (lambda-z0)(V-lambda)^{-1})
/// for a relation whose resolvent at lambda is an everywhere-defined operator.
double rr_residual(const LinearRelation& vtilde, Complex z0, Complex lambda);

}  // namespace pk
