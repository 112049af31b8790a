#include "pk/resolvent.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace pk {

namespace {

/// Boundary pencil as a relation: tau^{-1} - M_1(lambda) for exterior
/// lambda, tau - M_2(lambda) for interior lambda.
LinearRelation boundary_pencil(const BoundaryTriplet& t,
                               const LinearRelation& tau, Complex lambda) {
  if (std::abs(lambda) > 1.0) {
    Matrix m1 = weyl(t, 1, lambda);
    return tau.inverse().sum(
        LinearRelation::graph_of(t.n1(), t.n2(), Matrix(-m1)));
  }
  Matrix m2 = weyl(t, 2, lambda);
  return tau.sum(LinearRelation::graph_of(t.n2(), t.n1(), Matrix(-m2)));
}

}  // namespace

TauParam TauParam::from_relation(LinearRelation rel) {
  return TauParam(std::move(rel));
}

TauParam TauParam::from_pair(const PontryaginSpace& n2,
                             const PontryaginSpace& n1, Matrix k1, Matrix k2) {
  if (k1.cols() != k2.cols())
    throw DimensionMismatch("TauParam: K1 and K2 must share the parameter space");
  if (k1.rows() != n1.dim() || k2.rows() != n2.dim())
    throw DimensionMismatch("TauParam: K_i must map into N_i");
  Matrix span(n2.dim() + n1.dim(), k1.cols());
  span.topRows(n2.dim()) = k2;
  span.bottomRows(n1.dim()) = k1;
  TauParam out(LinearRelation(n2, n1,
                              Subspace(n2.dim() + n1.dim(), span)));
  out.k1_ = std::move(k1);
  out.k2_ = std::move(k2);
  return out;
}

PointClass point_class(const BoundaryTriplet& t, const TauParam& tau,
                       Complex lambda) {
  double r = std::abs(lambda);
  if (std::abs(r - 1.0) < 1e-12 || std::abs(lambda) < 1e-6)
    throw RegionViolation("point_class: lambda must be off the circle and away from 0");
  LinearRelation pencil = boundary_pencil(t, tau.rel(), lambda);
  if (pencil.from().dim() == 0) return PointClass::regular;
  RelationClass c = pencil.classify();
  if (c.operator_ && c.everywhere_defined) {
    Matrix p = pencil.operator_matrix();
    Eigen::JacobiSVD<Matrix> svd(p);
    double smin =
        svd.singularValues().size() ? svd.singularValues().tail(1)(0) : 0.0;
    if (smin <= tol()) return PointClass::eigenvalue;
    if (smin < 100.0 * tol()) return PointClass::undecided;
    return PointClass::regular;
  }
  if (pencil.ker().dim() > 0) return PointClass::eigenvalue;
  return PointClass::undecided;
}

Matrix krein_resolvent(const BoundaryTriplet& t, const TauParam& tau,
                       Complex lambda, ResolventForm form) {
  double r = std::abs(lambda);
  if (std::abs(r - 1.0) < 1e-12)
    throw RegionViolation("krein_resolvent: lambda on the unit circle");
  if (std::abs(lambda) < 1e-6)
    throw RegionViolation("krein_resolvent: lambda = 0 excluded");
  bool exterior = r > 1.0;
  if (form == ResolventForm::automatic)
    form = tau.has_pair() ? ResolventForm::pair : ResolventForm::relation;

  auto [v1, v2] = kernel_extensions(t);
  const LinearRelation& vj = exterior ? v1 : v2;
  Matrix base = vj.resolvent(lambda);
  int d1 = t.n1().dim(), d2 = t.n2().dim();
  if (d1 == 0 && d2 == 0) return base;

  Matrix correction;
  if (exterior) {
    Matrix g1 = gamma(t, 1, lambda);
    Matrix g2s = gamma_sharp(t, 2, lambda);
    Matrix middle;  // N2 -> N1
    switch (form) {
      case ResolventForm::relation: {
        LinearRelation pencil = boundary_pencil(t, tau.rel(), lambda);
        try {
          middle = pencil.inverse().operator_matrix();
        } catch (const NotInvertible&) {
          throw PencilSingular("krein_resolvent: tau^{-1} - M_1(lambda) not invertible");
        }
        break;
      }
      case ResolventForm::pair: {
        if (!tau.has_pair())
          throw std::invalid_argument("krein_resolvent: no operator pair supplied");
        Matrix m1 = weyl(t, 1, lambda);
        Matrix core = tau.k2() - m1 * tau.k1();
        Eigen::FullPivLU<Matrix> lu(core);
        if (!lu.isInvertible())
          throw PencilSingular("krein_resolvent: K_2 - M_1(lambda) K_1 singular");
        middle = tau.k1() * lu.inverse();
        break;
      }
      case ResolventForm::unitary: {
        RelationClass c = tau.rel().classify();
        if (!c.unitary || !c.operator_ || !c.everywhere_defined)
          throw std::invalid_argument("krein_resolvent: tau is not a unitary operator graph");
        Matrix u = tau.rel().operator_matrix();
        Matrix m1 = weyl(t, 1, lambda);
        Matrix core = Matrix::Identity(d2, d2) - m1 * u;
        Eigen::FullPivLU<Matrix> lu(core);
        if (!lu.isInvertible())
          throw PencilSingular("krein_resolvent: I - M_1(lambda) U singular");
        middle = u * lu.inverse();
        break;
      }
      default:
        throw std::invalid_argument("krein_resolvent: bad form");
    }
    correction = -(1.0 / lambda) * g1 * middle * g2s;
  } else {
    Matrix g2 = gamma(t, 2, lambda);
    Matrix g1s = gamma_sharp(t, 1, lambda);
    Matrix middle;  // N1 -> N2
    switch (form) {
      case ResolventForm::relation: {
        LinearRelation pencil = boundary_pencil(t, tau.rel(), lambda);
        try {
          middle = pencil.inverse().operator_matrix();
        } catch (const NotInvertible&) {
          throw PencilSingular("krein_resolvent: tau - M_2(lambda) not invertible");
        }
        break;
      }
      case ResolventForm::pair: {
        if (!tau.has_pair())
          throw std::invalid_argument("krein_resolvent: no operator pair supplied");
        Matrix m2 = weyl(t, 2, lambda);
        Matrix core = tau.k1() - m2 * tau.k2();
        Eigen::FullPivLU<Matrix> lu(core);
        if (!lu.isInvertible())
          throw PencilSingular("krein_resolvent: K_1 - M_2(lambda) K_2 singular");
        middle = tau.k2() * lu.inverse();
        break;
      }
      case ResolventForm::unitary: {
        RelationClass c = tau.rel().classify();
        if (!c.unitary || !c.operator_ || !c.everywhere_defined)
          throw std::invalid_argument("krein_resolvent: tau is not a unitary operator graph");
        Matrix u = tau.rel().operator_matrix();
        Matrix m2 = weyl(t, 2, lambda);
        // interior counterpart of the unitary form: tau - M_2 with tau = U
        Matrix core = u - m2;
        Eigen::FullPivLU<Matrix> lu(core);
        if (!lu.isInvertible())
          throw PencilSingular("krein_resolvent: U - M_2(lambda) singular");
        middle = lu.inverse();
        break;
      }
      default:
        throw std::invalid_argument("krein_resolvent: bad form");
    }
    correction = (1.0 / lambda) * g2 * middle * g1s;
  }
  return base + correction;
}

double sharp_consistency(const BoundaryTriplet& t, const TauParam& tau,
                         Complex lambda) {
  if (std::abs(lambda) >= 1.0 || std::abs(lambda) < 1e-6)
    throw RegionViolation("sharp_consistency: lambda must be interior and nonzero");
  LinearRelation tau_star = tau.rel().inverse().adjoint();
  Matrix direct = krein_resolvent(t, TauParam::from_relation(tau_star), lambda,
                                  ResolventForm::relation);
  // Sharp route: R_lambda(V_{tau^{-[*]}}) = -(1/lambda) I
  //   - (1/lambda^2) R_{1/conj(lambda)}(V_tau)^{[*]}.
  Complex refl = 1.0 / std::conj(lambda);
  Matrix outer = krein_resolvent(t, tau, refl, ResolventForm::relation);
  const PontryaginSpace& h = t.inst().space;
  int n = h.dim();
  Matrix via_sharp = -(1.0 / lambda) * Matrix::Identity(n, n) -
                     (1.0 / (lambda * lambda)) * indef_adjoint(outer, h, h);
  return (direct - via_sharp).cwiseAbs().maxCoeff();
}

}  // namespace pk
