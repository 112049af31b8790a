#include "pk/weyl.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace pk {

namespace {

void require_region(int j, Complex lambda) {
  double r = std::abs(lambda);
  if (j == 1 && r <= 1.0)
    throw RegionViolation("expected a point outside the unit circle");
  if (j == 2 && r >= 1.0)
    throw RegionViolation("expected a point inside the unit circle");
}

Complex reflect(Complex lambda) { return 1.0 / std::conj(lambda); }

}  // namespace

DefectSpace defect(const IsometryInstance& inst, Complex lambda) {
  LinearRelation vs = vstar(inst);
  int n = inst.space.dim();
  // Pairs (f, lambda f) inside Vstar.
  Matrix diag(2 * n, n);
  diag.topRows(n) = Matrix::Identity(n, n);
  diag.bottomRows(n) = lambda * Matrix::Identity(n, n);
  Subspace line(2 * n, diag);
  Subspace nhat = vs.graph().intersect(line);
  Matrix first = nhat.basis().topRows(n);
  return DefectSpace{lambda, Subspace(n, first), nhat};
}

DefectSpace defect(const BoundaryTriplet& t, Complex lambda) {
  int n = t.inst().space.dim();
  Matrix diag(2 * n, n);
  diag.topRows(n) = Matrix::Identity(n, n);
  diag.bottomRows(n) = lambda * Matrix::Identity(n, n);
  Subspace line(2 * n, diag);
  Subspace nhat = t.vstar().graph().intersect(line);
  return DefectSpace{lambda, Subspace(n, Matrix(nhat.basis().topRows(n))),
                     nhat};
}

Matrix gamma_hat(const BoundaryTriplet& t, int j, Complex lambda) {
  require_region(j, lambda);
  DefectSpace d = defect(t, lambda);
  const PontryaginSpace& nj = t.boundary_space(j);
  if (d.nhat.dim() != nj.dim())
    throw GammaNotInvertible("gamma: defect dimension does not match N_j");
  if (nj.dim() == 0) return Matrix(2 * t.inst().space.dim(), 0);
  Matrix on_defect = t.apply(j, d.nhat.basis());
  Eigen::FullPivLU<Matrix> lu(on_defect);
  if (!lu.isInvertible() ||
      lu.rcond() < 1e-10)
    throw GammaNotInvertible("gamma: Gamma_j restricted to the defect pairs is singular");
  return d.nhat.basis() * lu.inverse();
}

Matrix gamma(const BoundaryTriplet& t, int j, Complex lambda) {
  return gamma_hat(t, j, lambda).topRows(t.inst().space.dim());
}

Matrix weyl(const BoundaryTriplet& t, int j, Complex lambda) {
  Matrix gh = gamma_hat(t, j, lambda);
  return t.apply(j == 1 ? 2 : 1, gh);
}

Matrix gamma_sharp(const BoundaryTriplet& t, int j, Complex lambda) {
  Matrix g = gamma(t, j, reflect(lambda));
  return indef_adjoint(g, t.boundary_space(j), t.inst().space);
}

Matrix weyl_sharp(const BoundaryTriplet& t, int j, Complex lambda) {
  Matrix m = weyl(t, j, reflect(lambda));
  if (j == 1)  // M_1 : N1 -> N2, so M_1^# : N2 -> N1
    return indef_adjoint(m, t.n1(), t.n2());
  return indef_adjoint(m, t.n2(), t.n1());
}

double identity_residual(const BoundaryTriplet& t, int which, Complex lambda,
                         Complex mu) {
  Complex denom = 1.0 - lambda * std::conj(mu);
  if (std::abs(denom) < 1e-12)
    throw RegionViolation("identity_residual: 1 - lambda*conj(mu) vanishes");
  const PontryaginSpace& h = t.inst().space;
  auto adjd = [&](const Matrix& a, const PontryaginSpace& from,
                  const PontryaginSpace& to) {
    return indef_adjoint(a, from, to);
  };
  Matrix lhs, rhs;
  switch (which) {
    case 1: {
      Matrix ml = weyl(t, 1, lambda), mm = weyl(t, 1, mu);
      Matrix gl = gamma(t, 1, lambda), gm = gamma(t, 1, mu);
      Matrix id = Matrix::Identity(t.n1().dim(), t.n1().dim());
      lhs = -(id - adjd(mm, t.n1(), t.n2()) * ml) / denom;
      rhs = adjd(gm, t.n1(), h) * gl;
      break;
    }
    case 2: {
      Matrix ml = weyl(t, 2, lambda), mm = weyl(t, 2, mu);
      Matrix gl = gamma(t, 2, lambda), gm = gamma(t, 2, mu);
      Matrix id = Matrix::Identity(t.n2().dim(), t.n2().dim());
      lhs = (id - adjd(mm, t.n2(), t.n1()) * ml) / denom;
      rhs = adjd(gm, t.n2(), h) * gl;
      break;
    }
    case 3: {  // lambda interior, mu exterior
      Matrix m2l = weyl(t, 2, lambda), m1m = weyl(t, 1, mu);
      Matrix gl = gamma(t, 2, lambda), gm = gamma(t, 1, mu);
      lhs = (adjd(m1m, t.n1(), t.n2()) - m2l) / denom;
      rhs = adjd(gm, t.n1(), h) * gl;
      break;
    }
    case 4: {  // lambda exterior, mu interior
      Matrix m1l = weyl(t, 1, lambda), m2m = weyl(t, 2, mu);
      Matrix gl = gamma(t, 1, lambda), gm = gamma(t, 2, mu);
      lhs = (m1l - adjd(m2m, t.n2(), t.n1())) / denom;
      rhs = adjd(gm, t.n2(), h) * gl;
      break;
    }
    default:
      throw std::invalid_argument("identity_residual: which must be 1..4");
  }
  if (lhs.size() == 0) return 0.0;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double propagation_residual(const BoundaryTriplet& t, int j, Complex lambda,
                            Complex mu) {
  auto [v1, v2] = kernel_extensions(t);
  const LinearRelation& vj = (j == 1) ? v1 : v2;
  Matrix r = vj.resolvent(lambda);
  Matrix gl = gamma(t, j, lambda), gm = gamma(t, j, mu);
  int n = t.inst().space.dim();
  Matrix rhs = (Matrix::Identity(n, n) + (lambda - mu) * r) * gm;
  if (gl.size() == 0) return 0.0;
  return (gl - rhs).cwiseAbs().maxCoeff();
}

double l15_residual(const BoundaryTriplet& t, int j, Complex lambda) {
  require_region(j, lambda);
  if (std::abs(lambda) < 1e-6)
    throw RegionViolation("l15_residual: lambda too close to 0");
  auto [v1, v2] = kernel_extensions(t);
  const LinearRelation& vj = (j == 1) ? v1 : v2;
  int other = (j == 1) ? 2 : 1;
  Matrix r = vj.resolvent(lambda);
  int n = t.inst().space.dim();
  Matrix pairs(2 * n, n);
  pairs.topRows(n) = r;
  pairs.bottomRows(n) = Matrix::Identity(n, n) + lambda * r;
  Matrix lhs = t.apply(other, pairs);
  double sign = (j == 1) ? -1.0 : 1.0;
  Matrix rhs = sign / lambda * gamma_sharp(t, other, lambda);
  if (lhs.size() == 0) return 0.0;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

NegSquaresEstimate neg_squares(
    const std::vector<std::pair<Complex, Matrix>>& samples,
    const PontryaginSpace& source, const PontryaginSpace& target) {
  int d = source.dim();
  int np = static_cast<int>(samples.size());
  Matrix h = Matrix::Zero(np * d, np * d);
  Matrix id = Matrix::Identity(d, d);
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < np; ++j) {
      auto [li, si] = samples[i];
      auto [lj, sj] = samples[j];
      Complex denom = 1.0 - li * std::conj(lj);
      if (std::abs(denom) < 1e-12)
        throw RegionViolation("neg_squares: 1 - lambda_i*conj(lambda_j) vanishes");
      Matrix k = (id - indef_adjoint(sj, source, target) * si) / denom;
      // entry [(K_{l_j}(l_i)) u_a, u_b]_{source}
      h.block(j * d, i * d, d, d) = source.gram() * k;
    }
  }
  NegSquaresEstimate out;
  out.gram = Complex(0.5) * (h + Matrix(h.adjoint()));
  out.count = count_negative_eigenvalues(out.gram);
  for (auto& [l, s] : samples) out.sample_points.push_back(l);
  return out;
}

NegSquaresEstimate neg_squares_resampled(
    const std::vector<std::pair<Complex, Matrix>>& pool,
    const PontryaginSpace& source, const PontryaginSpace& target,
    unsigned seed) {
  NegSquaresEstimate best;
  best.count = -1;
  for (unsigned draw = 0; draw < 5; ++draw) {
    std::mt19937 rng(seed + draw);
    std::vector<std::pair<Complex, Matrix>> sub = pool;
    std::shuffle(sub.begin(), sub.end(), rng);
    if (sub.size() > 12) sub.resize(12);
    NegSquaresEstimate e = neg_squares(sub, source, target);
    if (e.count > best.count) best = std::move(e);
  }
  return best;
}

bool is_simple(const IsometryInstance& inst,
               const std::vector<Complex>& sample_lambdas) {
  int n = inst.space.dim();
  Subspace acc = Subspace::zero(n);
  for (Complex l : sample_lambdas) {
    acc = acc.add(defect(inst, l).n);
    if (acc.dim() == n) return true;
  }
  return false;
}

PoleReport pole_check(const BoundaryTriplet& t, Complex around) {
  PoleReport rep;
  auto norm_at = [&](Complex l) -> double {
    try {
      Matrix m = weyl(t, 1, l);
      return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
    } catch (const GammaNotInvertible&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  for (int k = 1; k <= 4; ++k) {
    double radius = std::pow(10.0, -k);
    double mx = 0.0;
    for (int a = 0; a < 8; ++a) {
      double ang = 2.0 * std::numbers::pi * a / 8.0;
      Complex l = around + radius * Complex(std::cos(ang), std::sin(ang));
      if (std::abs(l) <= 1.0) continue;
      mx = std::max(mx, norm_at(l));
    }
    rep.circle_max.push_back(mx);
  }
  for (Complex l : exterior_grid(t)) rep.grid_max = std::max(rep.grid_max, norm_at(l));
  // growth by >= 10x per radius decade signals a pole
  rep.blows_up = true;
  for (size_t k = 1; k < rep.circle_max.size(); ++k)
    if (!(rep.circle_max[k] >= 10.0 * rep.circle_max[k - 1]) ||
        rep.circle_max[k] == 0.0)
      rep.blows_up = false;
  return rep;
}

std::vector<Complex> interior_grid(const BoundaryTriplet& t) {
  ExceptionalSets ex = exceptional_sets(t);
  std::vector<Complex> out;
  for (double r : {0.2, 0.5, 0.8}) {
    for (int a = 0; a < 8; ++a) {
      double ang = 2.0 * std::numbers::pi * a / 8.0;
      Complex l = r * Complex(std::cos(ang), std::sin(ang));
      if (std::abs(l) < 1e-6) continue;
      bool bad = false;
      for (Complex e : ex.lambda2)
        if (std::abs(l - e) < 1e-3) bad = true;
      if (!bad) out.push_back(l);
    }
  }
  return out;
}

std::vector<Complex> exterior_grid(const BoundaryTriplet& t) {
  ExceptionalSets ex = exceptional_sets(t);
  std::vector<Complex> out;
  for (double r : {0.2, 0.5, 0.8}) {
    for (int a = 0; a < 8; ++a) {
      double ang = 2.0 * std::numbers::pi * a / 8.0;
      Complex inner = r * Complex(std::cos(ang), std::sin(ang));
      Complex l = 1.0 / std::conj(inner);
      bool bad = false;
      for (Complex e : ex.lambda1)
        if (std::abs(l - e) < 1e-3) bad = true;
      if (!bad) out.push_back(l);
    }
  }
  return out;
}

bool defect_degenerate(const IsometryInstance& inst,
                       const std::vector<Complex>& lambdas) {
  for (Complex l : lambdas) {
    DefectSpace d = defect(inst, l);
    if (d.n.dim() == 0) continue;
    if (subspace_signature(inst.space, d.n).nondegenerate()) return false;
  }
  return true;
}

}  // namespace pk
