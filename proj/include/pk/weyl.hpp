#pragma once

#include <utility>
#include <vector>

#include "pk/boundary.hpp"

namespace pk {

struct DefectSpace {
  Complex lambda;
  Subspace n;     // defect vectors in H
  Subspace nhat;  // {(f, lambda f)} inside Vstar
};

/// N_lambda(V) = {f : (f, lambda f) in V^{-[*]}}.
DefectSpace defect(const IsometryInstance& inst, Complex lambda);
DefectSpace defect(const BoundaryTriplet& triplet, Complex lambda);

/// gamma_j(lambda) : N_j -> H, the inverse of Gamma_j restricted to the
/// defect pairs, projected to the first component.
Matrix gamma(const BoundaryTriplet& triplet, int j, Complex lambda);
/// The full pair map gammahat_j(lambda) : N_j -> H x H.
Matrix gamma_hat(const BoundaryTriplet& triplet, int j, Complex lambda);

/// M_1(lambda) = Gamma_2 gammahat_1(lambda) for |lambda| > 1;
/// M_2(lambda) = Gamma_1 gammahat_2(lambda) for |lambda| < 1.
Matrix weyl(const BoundaryTriplet& triplet, int j, Complex lambda);

/// F^#(lambda) = F(1/conj(lambda))^{[*]} for the gamma-fields and the Weyl
/// functions.
Matrix gamma_sharp(const BoundaryTriplet& triplet, int j, Complex lambda);
Matrix weyl_sharp(const BoundaryTriplet& triplet, int j, Complex lambda);

/// Residuals of the four Green-derived identities connecting gamma and M.
/// which = 1..4; regions: (1) both points exterior; (2) both interior;
/// (3) lambda interior, mu exterior; (4) lambda exterior, mu interior.
double identity_residual(const BoundaryTriplet& triplet, int which,
                         Complex lambda, Complex mu);

/// Residual of the propagation law
/// gamma_j(lambda) = (I + (lambda-mu)(V_j-lambda)^{-1}) gamma_j(mu).
double propagation_residual(const BoundaryTriplet& triplet, int j,
                            Complex lambda, Complex mu);

/// Residual of Gamma_{3-j} applied to the resolvent pair of V_j against
/// -+ (1/lambda) gamma_{3-j}^#(lambda)  (sign - for j=1, + for j=2).
double l15_residual(const BoundaryTriplet& triplet, int j, Complex lambda);

struct NegSquaresEstimate {
  int count = 0;
  std::vector<Complex> sample_points;
  Matrix gram;
};

/// Negative-squares count of the kernel (I - s(mu)^{[*]} s(lambda))/(1 -
/// lambda conj(mu)) sampled at the given (point, value) pairs. `source` and
/// `target` carry the Grams of the operator function s : source -> target.
NegSquaresEstimate neg_squares(
    const std::vector<std::pair<Complex, Matrix>>& samples,
    const PontryaginSpace& source, const PontryaginSpace& target);

/// Maximum of neg_squares over seeded resamples (5 draws of up to 12 points
/// from the pool).
NegSquaresEstimate neg_squares_resampled(
    const std::vector<std::pair<Complex, Matrix>>& pool,
    const PontryaginSpace& source, const PontryaginSpace& target,
    unsigned seed);

bool is_simple(const IsometryInstance& inst,
               const std::vector<Complex>& sample_lambdas);

struct PoleReport {
  std::vector<double> circle_max;  // max |M_1| on shrinking circles
  double grid_max = 0.0;           // max |M_1| on the exterior grid
  bool blows_up = false;
};

PoleReport pole_check(const BoundaryTriplet& triplet, Complex around);

/// Deterministic sampling grids avoiding the exceptional sets: interior
/// radii {0.2, 0.5, 0.8} x 8 angles, exterior their reflected counterparts.
std::vector<Complex> interior_grid(const BoundaryTriplet& triplet);
std::vector<Complex> exterior_grid(const BoundaryTriplet& triplet);

/// True when the defect subspace is degenerate at every sampled point.
bool defect_degenerate(const IsometryInstance& inst,
                       const std::vector<Complex>& lambdas);

}  // namespace pk
