#include "pk/relation.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>

namespace pk {

namespace {

Matrix random_matrix(int rows, int cols, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = Complex(dist(rng), dist(rng));
  return m;
}

double smallest_singular_value(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().tail(1)(0);
}

}  // namespace

LinearRelation::LinearRelation(PontryaginSpace from, PontryaginSpace to,
                               Subspace graph)
    : from_(std::move(from)), to_(std::move(to)), graph_(std::move(graph)) {
  if (graph_.ambient_dim() != from_.dim() + to_.dim())
    throw DimensionMismatch("LinearRelation: graph lives in the wrong product");
}

LinearRelation LinearRelation::graph_of(const PontryaginSpace& from,
                                        const PontryaginSpace& to,
                                        const Matrix& a) {
  if (a.rows() != to.dim() || a.cols() != from.dim())
    throw DimensionMismatch("graph_of: matrix shape mismatch");
  Matrix g(from.dim() + to.dim(), from.dim());
  g.topRows(from.dim()) = Matrix::Identity(from.dim(), from.dim());
  g.bottomRows(to.dim()) = a;
  return LinearRelation(from, to, Subspace(from.dim() + to.dim(), g));
}

LinearRelation LinearRelation::graph_on_domain(const PontryaginSpace& from,
                                               const PontryaginSpace& to,
                                               const Matrix& domain_basis,
                                               const Matrix& images) {
  if (domain_basis.cols() != images.cols())
    throw DimensionMismatch("graph_on_domain: basis/image count mismatch");
  Matrix g(from.dim() + to.dim(), domain_basis.cols());
  g.topRows(from.dim()) = domain_basis;
  g.bottomRows(to.dim()) = images;
  return LinearRelation(from, to, Subspace(from.dim() + to.dim(), g));
}

LinearRelation LinearRelation::zero(const PontryaginSpace& from,
                                    const PontryaginSpace& to) {
  return LinearRelation(from, to, Subspace::zero(from.dim() + to.dim()));
}

LinearRelation LinearRelation::full(const PontryaginSpace& from,
                                    const PontryaginSpace& to) {
  return LinearRelation(from, to, Subspace::full(from.dim() + to.dim()));
}

LinearRelation LinearRelation::identity(const PontryaginSpace& space) {
  return graph_of(space, space, Matrix::Identity(space.dim(), space.dim()));
}

Matrix LinearRelation::first_components() const {
  return graph_.basis().topRows(from_.dim());
}

Matrix LinearRelation::second_components() const {
  return graph_.basis().bottomRows(to_.dim());
}

Subspace LinearRelation::dom() const {
  return Subspace(from_.dim(), first_components());
}

Subspace LinearRelation::ran() const {
  return Subspace(to_.dim(), second_components());
}

Subspace LinearRelation::ker() const {
  // {f : (f,0) in T}
  Subspace z = Subspace::kernel(second_components());
  return Subspace(from_.dim(), first_components() * z.basis());
}

Subspace LinearRelation::mul() const {
  Subspace z = Subspace::kernel(first_components());
  return Subspace(to_.dim(), second_components() * z.basis());
}

bool LinearRelation::contains(const LinearRelation& other) const {
  return graph_.contains(other.graph_);
}

bool LinearRelation::equals(const LinearRelation& other) const {
  return graph_.equals(other.graph_);
}

LinearRelation LinearRelation::inverse() const {
  Matrix b(graph_.ambient_dim(), graph_.dim());
  b.topRows(to_.dim()) = second_components();
  b.bottomRows(from_.dim()) = first_components();
  return LinearRelation(to_, from_, Subspace(graph_.ambient_dim(), b));
}

LinearRelation LinearRelation::adjoint() const {
  // (g2,g1) in T^{[*]}  <=>  [f2,g2] = [f1,g1] for all (f1,f2) in T,
  // i.e. (g2,g1) is Euclidean-orthogonal to every (J2 f2, -J1 f1).
  Matrix constraints(graph_.dim(), to_.dim() + from_.dim());
  constraints.leftCols(to_.dim()) =
      (to_.gram() * second_components()).adjoint();
  constraints.rightCols(from_.dim()) =
      -(from_.gram() * first_components()).adjoint();
  return LinearRelation(to_, from_, Subspace::kernel(constraints));
}

LinearRelation LinearRelation::sum(const LinearRelation& other) const {
  if (!from_.same_as(other.from_) || !to_.same_as(other.to_))
    throw DimensionMismatch("sum: relations act between different spaces");
  // Pairs (f, g+h) with (f,g) in T, (f,h) in S: match first components.
  Matrix f1 = first_components(), g1 = second_components();
  Matrix f2 = other.first_components(), g2 = other.second_components();
  Matrix match(from_.dim(), graph_.dim() + other.graph_.dim());
  match.leftCols(graph_.dim()) = f1;
  match.rightCols(other.graph_.dim()) = -f2;
  Subspace k = Subspace::kernel(match);
  Matrix span(from_.dim() + to_.dim(), k.dim());
  Matrix x = k.basis().topRows(graph_.dim());
  Matrix y = k.basis().bottomRows(other.graph_.dim());
  span.topRows(from_.dim()) = f1 * x;
  span.bottomRows(to_.dim()) = g1 * x + g2 * y;
  return LinearRelation(from_, to_, Subspace(from_.dim() + to_.dim(), span));
}

LinearRelation LinearRelation::scale(Complex c) const {
  Matrix b(graph_.ambient_dim(), graph_.dim());
  b.topRows(from_.dim()) = first_components();
  b.bottomRows(to_.dim()) = c * second_components();
  return LinearRelation(from_, to_, Subspace(graph_.ambient_dim(), b));
}

LinearRelation LinearRelation::shift(Complex lambda) const {
  if (from_.dim() != to_.dim())
    throw DimensionMismatch("shift: relation must act in one space");
  Matrix b(graph_.ambient_dim(), graph_.dim());
  b.topRows(from_.dim()) = first_components();
  b.bottomRows(to_.dim()) =
      second_components() - lambda * first_components();
  return LinearRelation(from_, to_, Subspace(graph_.ambient_dim(), b));
}

RelationClass LinearRelation::classify() const {
  RelationClass c;
  Matrix f = first_components(), g = second_components();
  Matrix diff = g.adjoint() * to_.gram() * g - f.adjoint() * from_.gram() * f;
  c.isometric = graph_.dim() == 0 || diff.cwiseAbs().maxCoeff() <= tol();
  c.contractive = true;
  c.expansive = true;
  if (diff.size() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        Complex(0.5) * (diff + Matrix(diff.adjoint())));
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      if (es.eigenvalues()(i) > tol()) c.contractive = false;
      if (es.eigenvalues()(i) < -tol()) c.expansive = false;
    }
  }
  LinearRelation inv = inverse();
  LinearRelation adj = adjoint();
  c.coisometric = inv.contains(adj);
  c.unitary = inv.equals(adj);
  if (c.unitary) c.isometric = c.coisometric = true;
  c.operator_ = mul().dim() == 0;
  c.everywhere_defined = dom().dim() == from_.dim();
  return c;
}

Subspace LinearRelation::eigenspace(Complex lambda) const {
  // ker(T - lambda) = {Fx : (G - lambda F)x = 0}; x != 0 with Fx = 0 would
  // force Gx = 0, impossible for an orthonormal graph basis.
  Matrix f = first_components(), g = second_components();
  Subspace k = Subspace::kernel(Matrix(g - lambda * f));
  return Subspace(from_.dim(), f * k.basis());
}

PencilSpectrum LinearRelation::pencil_spectrum() const {
  if (from_.dim() != to_.dim())
    throw DimensionMismatch("pencil_spectrum: relation must act in one space");
  PencilSpectrum out;
  out.eigenvalue_at_infinity = mul().dim() > 0;
  int n = from_.dim();
  int k = graph_.dim();
  if (k == 0) return out;
  if (k > n) {
    // G - lambda F is n x k with k > n: nontrivial kernel for every lambda.
    out.degenerate = true;
    return out;
  }
  Matrix f = first_components(), g = second_components();
  // Row-compress to a square pencil with a seeded random map, then turn the
  // generalized problem into an ordinary one with a random shift.
  std::vector<Complex> candidates;
  bool solved = false;
  for (unsigned attempt = 0; attempt < 5 && !solved; ++attempt) {
    Matrix c = random_matrix(k, n, 777 + attempt);
    Matrix cf = c * f, cg = c * g;
    Complex mu(0.37 + 0.11 * attempt, 0.53 - 0.07 * attempt);
    Matrix a = cg - mu * cf;
    Eigen::FullPivLU<Matrix> lu(a);
    if (!lu.isInvertible()) continue;
    Matrix m = lu.solve(cf);
    Eigen::ComplexEigenSolver<Matrix> es(m);
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      Complex nu = es.eigenvalues()(i);
      if (std::abs(nu) > 1e-10) candidates.push_back(mu + 1.0 / nu);
    }
    solved = true;
  }
  if (!solved) {
    out.degenerate = true;
    return out;
  }
  // Keep candidates that genuinely drop the pencil rank; dedupe.
  for (Complex lam : candidates) {
    double s = smallest_singular_value(g - lam * f);
    if (s > 1e-7 * (1.0 + std::abs(lam))) continue;
    bool seen = false;
    for (Complex e : out.eigenvalues)
      if (std::abs(e - lam) <= 1e-7 * (1.0 + std::abs(lam))) seen = true;
    if (!seen) out.eigenvalues.push_back(lam);
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            [](Complex a, Complex b) {
              if (a.real() != b.real()) return a.real() < b.real();
              return a.imag() < b.imag();
            });
  return out;
}

Matrix LinearRelation::operator_matrix() const {
  int n = from_.dim();
  Matrix f = first_components(), g = second_components();
  if (graph_.dim() != n)
    throw NotInvertible("operator_matrix: relation is not an everywhere-defined operator");
  Eigen::FullPivLU<Matrix> lu(f);
  lu.setThreshold(1e-9);
  if (!lu.isInvertible())
    throw NotInvertible("operator_matrix: multivalued part or partial domain");
  return g * lu.inverse();
}

Matrix LinearRelation::resolvent(Complex lambda) const {
  LinearRelation inv = shift(lambda).inverse();
  Matrix r;
  try {
    r = inv.operator_matrix();
  } catch (const NotInvertible&) {
    throw NotInvertible("resolvent: lambda is not a regular point");
  }
  // Internal check of (T - lambda) R = I on the graph.
  LinearRelation shifted = shift(lambda);
  int n = from_.dim();
  Matrix pairs(2 * n, n);
  pairs.topRows(n) = r;
  pairs.bottomRows(n) = Matrix::Identity(n, n);
  Matrix p = shifted.graph().projector();
  double res = (pairs - p * pairs).cwiseAbs().maxCoeff();
  if (res > 1e-7 * (1.0 + r.cwiseAbs().maxCoeff()))
    throw NotInvertible("resolvent: verification of (T-lambda)R=I failed");
  return r;
}

}  // namespace pk
