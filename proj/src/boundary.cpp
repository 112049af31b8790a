#include "pk/boundary.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <random>

namespace pk {

IsometryInstance::IsometryInstance(PontryaginSpace s, LinearRelation rel,
                                   std::string lbl)
    : space(std::move(s)), v(std::move(rel)), label(std::move(lbl)) {
  if (v.from().dim() != space.dim() || v.to().dim() != space.dim())
    throw DimensionMismatch("IsometryInstance: relation must act in the space");
  RelationClass c = v.classify();
  if (!c.isometric)
    throw std::invalid_argument("IsometryInstance: V is not isometric");
  if (!c.operator_)
    throw std::invalid_argument("IsometryInstance: V has a multivalued part");
}

BoundaryTriplet::BoundaryTriplet(IsometryInstance inst, LinearRelation vstar,
                                 PontryaginSpace n1, PontryaginSpace n2,
                                 Matrix g1, Matrix g2, int kappa1)
    : inst_(std::move(inst)),
      vstar_(std::move(vstar)),
      n1_(std::move(n1)),
      n2_(std::move(n2)),
      g1_(std::move(g1)),
      g2_(std::move(g2)),
      kappa1_(kappa1) {
  int m = vstar_.graph_dim();
  if (g1_.cols() != m || g2_.cols() != m)
    throw DimensionMismatch("BoundaryTriplet: Gamma must act on Vstar coordinates");
  if (g1_.rows() != n1_.dim() || g2_.rows() != n2_.dim())
    throw DimensionMismatch("BoundaryTriplet: Gamma target dimension mismatch");
}

Matrix BoundaryTriplet::apply(int j, const Matrix& pairs) const {
  Matrix coords = vstar_.graph().basis().adjoint() * pairs;
  return g(j) * coords;
}

LinearRelation vstar(const IsometryInstance& inst) {
  return inst.v.inverse().adjoint();
}

Matrix boundary_form(const IsometryInstance& inst,
                     const LinearRelation& vstar_rel) {
  int n = inst.space.dim();
  Matrix top = vstar_rel.first_components();
  Matrix bot = vstar_rel.second_components();
  const Matrix& j = inst.space.gram();
  return bot.adjoint() * j * bot - top.adjoint() * j * top;
}

BoundaryTriplet construct_triplet(const IsometryInstance& inst, int kappa1) {
  LinearRelation vs = vstar(inst);
  int m = vs.graph_dim();
  Matrix b = boundary_form(inst, vs);

  // Graph of V in Vstar coordinates, and a Euclidean complement of it.
  Matrix cv = vs.graph().basis().adjoint() * inst.v.graph().basis();
  int g = static_cast<int>(cv.cols());
  Subspace comp = Subspace::kernel(Matrix(cv.adjoint()));
  const Matrix& q = comp.basis();  // m x p
  int p = comp.dim();

  if (p == 0) {
    // V is unitary: the triplet is trivial with empty boundary spaces.
    if (kappa1 != 0)
      throw InfeasibleKappa1(
          "construct_triplet: no Gram assignment with the requested kappa1");
    PontryaginSpace empty(Matrix(0, 0));
    return BoundaryTriplet(inst, vs, empty, empty, Matrix(0, m), Matrix(0, m),
                           0);
  }

  Matrix bq = q.adjoint() * b * q;
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      Complex(0.5) * (bq + Matrix(bq.adjoint())));
  std::vector<int> pos, neg;
  for (int i = 0; i < p; ++i) {
    double d = es.eigenvalues()(i);
    if (d > tol())
      pos.push_back(i);
    else if (d < -tol())
      neg.push_back(i);
    else
      throw std::runtime_error(
          "construct_triplet: boundary form degenerate modulo graph(V)");
  }
  int pp = static_cast<int>(pos.size());
  int pm = static_cast<int>(neg.size());
  if (kappa1 < 0 || kappa1 > std::min(pp, pm))
    throw InfeasibleKappa1("construct_triplet: no Gram assignment with the requested kappa1");

  PontryaginSpace n1 = PontryaginSpace::diagonal(pp - kappa1, kappa1);
  PontryaginSpace n2 = PontryaginSpace::diagonal(pm - kappa1, kappa1);

  // Change of basis on Vstar coordinates: graph(V) columns then the
  // B-normalized eigendirections.
  Matrix basis(m, m);
  basis.leftCols(g) = cv;
  Matrix a1 = Matrix::Zero(pp, m);
  Matrix a2 = Matrix::Zero(pm, m);
  for (int i = 0; i < pp; ++i) {
    int col = g + i;
    basis.col(col) = q * es.eigenvectors().col(pos[i]) /
                     std::sqrt(es.eigenvalues()(pos[i]));
    if (i < pp - kappa1) {
      a1(i, col) = 1.0;  // positive axis of N1
    } else {
      // hyperbolic pairing: positive B-direction through a negative N2 axis
      a2((pm - kappa1) + (i - (pp - kappa1)), col) = 1.0;
    }
  }
  for (int jn = 0; jn < pm; ++jn) {
    int col = g + pp + jn;
    basis.col(col) = q * es.eigenvectors().col(neg[jn]) /
                     std::sqrt(-es.eigenvalues()(neg[jn]));
    if (jn < pm - kappa1) {
      a2(jn, col) = 1.0;  // positive axis of N2
    } else {
      a1((pp - kappa1) + (jn - (pm - kappa1)), col) = 1.0;  // negative N1 axis
    }
  }
  Matrix basis_inv = basis.inverse();
  return BoundaryTriplet(inst, vs, n1, n2, a1 * basis_inv, a2 * basis_inv,
                         kappa1);
}

TripletReport verify_triplet(const BoundaryTriplet& t) {
  TripletReport r;
  const IsometryInstance& inst = t.inst();
  Matrix b = boundary_form(inst, t.vstar());
  Matrix green = t.g1().adjoint() * t.n1().gram() * t.g1() -
                 t.g2().adjoint() * t.n2().gram() * t.g2();
  r.green_residual =
      b.size() ? (green - b).cwiseAbs().maxCoeff() : 0.0;

  int target = t.n1().dim() + t.n2().dim();
  Matrix stacked(target, t.vstar().graph_dim());
  stacked.topRows(t.n1().dim()) = t.g1();
  stacked.bottomRows(t.n2().dim()) = t.g2();
  if (target == 0) {
    r.surjective = true;
    r.surjectivity_min_sv = 0.0;
  } else {
    Eigen::JacobiSVD<Matrix> svd(stacked);
    r.surjectivity_min_sv =
        svd.singularValues().size() >= target
            ? svd.singularValues()(target - 1)
            : 0.0;
    r.surjective = r.surjectivity_min_sv > tol();
  }

  // ker Gamma_1 ∩ ker Gamma_2 = graph of V.
  Subspace kern = Subspace::kernel(stacked);
  Matrix vecs = t.vstar().graph().basis() * kern.basis();
  Subspace kern_pairs(t.vstar().graph().ambient_dim(), vecs);
  r.kernel_distance = kern_pairs.distance(inst.v.graph());

  r.pass = r.green_residual <= 1e-9 && r.surjective &&
           r.kernel_distance <= 1e-9;
  return r;
}

LinearRelation extension(const BoundaryTriplet& t, const LinearRelation& tau) {
  if (tau.from().dim() != t.n2().dim() || tau.to().dim() != t.n1().dim())
    throw DimensionMismatch("extension: tau must go from N2 to N1");
  int m = t.vstar().graph_dim();
  // (Gamma_2 xi, Gamma_1 xi) must lie in the graph of tau.
  Matrix bmap(t.n2().dim() + t.n1().dim(), m);
  bmap.topRows(t.n2().dim()) = t.g2();
  bmap.bottomRows(t.n1().dim()) = t.g1();
  Matrix p = tau.graph().projector();
  Matrix constraint =
      bmap - p * bmap;
  Subspace coords = Subspace::kernel(constraint);
  Matrix vecs = t.vstar().graph().basis() * coords.basis();
  const PontryaginSpace& h = t.inst().space;
  return LinearRelation(h, h, Subspace(2 * h.dim(), vecs));
}

std::pair<LinearRelation, LinearRelation> kernel_extensions(
    const BoundaryTriplet& t) {
  const PontryaginSpace& h = t.inst().space;
  auto from_coords = [&](const Subspace& coords) {
    Matrix vecs = t.vstar().graph().basis() * coords.basis();
    return LinearRelation(h, h, Subspace(2 * h.dim(), vecs));
  };
  return {from_coords(Subspace::kernel(t.g1())),
          from_coords(Subspace::kernel(t.g2()))};
}

ExceptionalSets exceptional_sets(const BoundaryTriplet& t) {
  auto [v1, v2] = kernel_extensions(t);
  ExceptionalSets out;
  for (Complex l : v1.pencil_spectrum().eigenvalues)
    if (std::abs(l) > 1.0) out.lambda1.push_back(l);
  for (Complex l : v2.pencil_spectrum().eigenvalues)
    if (std::abs(l) < 1.0) out.lambda2.push_back(l);
  return out;
}

CorrespondenceReport classify_extension_correspondence(
    const BoundaryTriplet& t, const LinearRelation& tau, unsigned seed) {
  CorrespondenceReport r;
  LinearRelation vtau = extension(t, tau);

  // (1) nesting against a random sub-relation of tau.
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  int k = tau.graph_dim();
  int k1 = k > 0 ? 1 + static_cast<int>(rng() % static_cast<unsigned>(k)) : 0;
  Matrix mix(k, k1);
  for (int j = 0; j < k1; ++j)
    for (int i = 0; i < k; ++i) mix(i, j) = Complex(dist(rng), dist(rng));
  Subspace sub(tau.graph().ambient_dim(), Matrix(tau.graph().basis() * mix));
  LinearRelation tau_sub(tau.from(), tau.to(), sub);
  LinearRelation vtau_sub = extension(t, tau_sub);
  r.nesting = vtau.contains(vtau_sub);

  // (2) V_{tau^{-[*]}} = (V_tau)^{-[*]}.
  LinearRelation tau_star = tau.inverse().adjoint();
  r.adjoint_law = extension(t, tau_star).equals(vtau.inverse().adjoint());

  RelationClass ct = tau.classify();
  RelationClass cv = vtau.classify();
  r.unitary = ct.unitary == cv.unitary;
  r.isometric = ct.isometric == cv.isometric;
  r.coisometric = ct.coisometric == cv.coisometric;
  r.contractive = ct.contractive == cv.contractive;
  r.expansive = ct.expansive == cv.expansive;
  return r;
}

}  // namespace pk
