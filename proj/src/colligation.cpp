#include "pk/colligation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

namespace pk {

namespace {

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Matrix safe_inverse(const Matrix& m, const char* what) {
  Eigen::FullPivLU<Matrix> lu(m);
  if (!lu.isInvertible()) throw NotInvertible(what);
  return lu.inverse();
}

}  // namespace

UnitaryColligation::UnitaryColligation(PontryaginSpace state_,
                                       PontryaginSpace input_,
                                       PontryaginSpace output_, Matrix t_,
                                       Matrix f_, Matrix g_, Matrix h_)
    : state(std::move(state_)),
      input(std::move(input_)),
      output(std::move(output_)),
      t(std::move(t_)),
      f(std::move(f_)),
      g(std::move(g_)),
      h(std::move(h_)) {
  int s = state.dim(), i = input.dim(), o = output.dim();
  if (t.rows() != s || t.cols() != s || f.rows() != s || f.cols() != i ||
      g.rows() != o || g.cols() != s || h.rows() != o || h.cols() != i)
    throw DimensionMismatch("UnitaryColligation: block shapes");
}

Matrix UnitaryColligation::connecting() const {
  int s = state.dim(), i = input.dim(), o = output.dim();
  Matrix u(s + o, s + i);
  u.topLeftCorner(s, s) = t;
  u.topRightCorner(s, i) = f;
  u.bottomLeftCorner(o, s) = g;
  u.bottomRightCorner(o, i) = h;
  return u;
}

ColligationReport verify_colligation(const UnitaryColligation& d) {
  const auto& s = d.state;
  const auto& in = d.input;
  const auto& out = d.output;
  Matrix ts = indef_adjoint(d.t, s, s);
  Matrix fs = indef_adjoint(d.f, in, s);
  Matrix gs = indef_adjoint(d.g, s, out);
  Matrix hs = indef_adjoint(d.h, in, out);
  Matrix is_ = Matrix::Identity(s.dim(), s.dim());
  Matrix ii = Matrix::Identity(in.dim(), in.dim());
  Matrix io = Matrix::Identity(out.dim(), out.dim());
  auto norm = [](const Matrix& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
  };
  ColligationReport r;
  r.residuals[0] = norm(ts * d.t + gs * d.g - is_);
  r.residuals[1] = norm(fs * d.f + hs * d.h - ii);
  r.residuals[2] = norm(ts * d.f + gs * d.h);
  r.residuals[3] = norm(d.t * ts + d.f * fs - is_);
  r.residuals[4] = norm(d.g * gs + d.h * hs - io);
  r.residuals[5] = norm(d.t * gs + d.f * hs);
  r.max_residual = *std::max_element(r.residuals.begin(), r.residuals.end());
  r.pass = r.max_residual <= 1e-10;
  return r;
}

Matrix char_function(const UnitaryColligation& d, Complex lambda) {
  int s = d.state.dim();
  Matrix core = Matrix::Identity(s, s) - lambda * d.t;
  return d.h +
         lambda * d.g * safe_inverse(core, "char_function: 1/lambda hits the state spectrum") *
             d.f;
}

Matrix char_function_projected(const UnitaryColligation& d, Complex lambda) {
  int s = d.state.dim(), i = d.input.dim(), o = d.output.dim();
  Matrix u = d.connecting();  // s+i -> s+o
  // P_state : state (+) output -> state (+) input (project, re-embed).
  Matrix p = Matrix::Zero(s + i, s + o);
  p.topLeftCorner(s, s) = Matrix::Identity(s, s);
  Matrix core = Matrix::Identity(s + o, s + o) - lambda * u * p;
  Matrix inv = safe_inverse(core, "char_function_projected: singular pencil");
  Matrix emb = Matrix::Zero(s + i, i);
  emb.bottomRows(i) = Matrix::Identity(i, i);
  return (inv * u * emb).bottomRows(o);
}

bool is_simple_colligation(const UnitaryColligation& d) {
  int s = d.state.dim();
  if (s == 0) return true;
  Matrix ts = indef_adjoint(d.t, d.state, d.state);
  Matrix fs = indef_adjoint(d.f, d.input, d.state);
  // Largest T- and T^{[*]}-invariant subspace inside ker G cap ker F^{[*]}.
  Subspace cur = Subspace::kernel(d.g).intersect(Subspace::kernel(fs));
  for (;;) {
    Subspace next = cur.intersect(cur.preimage(d.t, s))
                        .intersect(cur.preimage(ts, s));
    if (next.dim() == cur.dim()) break;
    cur = next;
  }
  return cur.dim() == 0;
}

ExitSpace::ExitSpace(PontryaginSpace hperp_, PontryaginSpace inner_)
    : hperp(std::move(hperp_)),
      inner(std::move(inner_)),
      htilde(block_diag(hperp.gram(), inner.gram())) {}

Matrix ExitSpace::embed(const Matrix& m) const {
  Matrix out = Matrix::Zero(htilde.dim(), m.cols());
  out.bottomRows(inner.dim()) = m;
  return out;
}

Matrix ExitSpace::project(const Matrix& m) const {
  return m.bottomRows(inner.dim());
}

LiftedTriplet lift_triplet(const BoundaryTriplet& base,
                           const PontryaginSpace& hperp) {
  ExitSpace exit(hperp, base.inst().space);
  int p = hperp.dim();
  int n = exit.inner.dim();
  int nt = exit.htilde.dim();

  // Lifted operator: same graph, embedded into Htilde pairs.
  Matrix vg = base.inst().v.graph().basis();
  Matrix lifted_graph = Matrix::Zero(2 * nt, vg.cols());
  lifted_graph.middleRows(p, n) = vg.topRows(n);
  lifted_graph.middleRows(nt + p, n) = vg.bottomRows(n);
  IsometryInstance inst(
      exit.htilde,
      LinearRelation(exit.htilde, exit.htilde, Subspace(2 * nt, lifted_graph)),
      base.inst().label + "/lifted");

  LinearRelation vs = vstar(inst);

  // Expected shape: the full (Hperp)^2 block plus the embedded base Vstar.
  Matrix bs = base.vstar().graph().basis();
  Matrix expected = Matrix::Zero(2 * nt, 2 * p + bs.cols());
  expected.block(0, 0, p, p) = Matrix::Identity(p, p);
  expected.block(nt, p, p, p) = Matrix::Identity(p, p);
  expected.block(p, 2 * p, n, bs.cols()) = bs.topRows(n);
  expected.block(nt + p, 2 * p, n, bs.cols()) = bs.bottomRows(n);
  if (Subspace(2 * nt, expected).distance(vs.graph()) > 1e-8)
    throw std::runtime_error("lift_triplet: lifted adjoint graph mismatch");

  // Gamma on the canonical coordinates of vs: split each basis column into
  // its (Hperp)^2 part and its embedded base pair.
  const Matrix& b = vs.graph().basis();
  int k = static_cast<int>(b.cols());
  Matrix mtop = b.middleRows(0, p);       // m
  Matrix mbot = b.middleRows(nt, p);      // m'
  Matrix fhat(2 * n, k);
  fhat.topRows(n) = b.middleRows(p, n);
  fhat.bottomRows(n) = b.middleRows(nt + p, n);

  Matrix g1t(p + base.n1().dim(), k);
  g1t.topRows(p) = mbot;
  g1t.bottomRows(base.n1().dim()) = base.apply(1, fhat);
  Matrix g2t(p + base.n2().dim(), k);
  g2t.topRows(p) = mtop;
  g2t.bottomRows(base.n2().dim()) = base.apply(2, fhat);

  PontryaginSpace n1t(block_diag(hperp.gram(), base.n1().gram()));
  PontryaginSpace n2t(block_diag(hperp.gram(), base.n2().gram()));
  BoundaryTriplet lifted(std::move(inst), std::move(vs), std::move(n1t),
                         std::move(n2t), std::move(g1t), std::move(g2t),
                         hperp.neg_index() + base.kappa1());
  return LiftedTriplet{base, std::move(exit), std::move(lifted)};
}

LinearRelation exit_extension(const LiftedTriplet& lifted,
                              const UnitaryColligation& d) {
  if (!d.state.same_as(lifted.exit.hperp) ||
      !d.input.same_as(lifted.base.n2()) || !d.output.same_as(lifted.base.n1()))
    throw DimensionMismatch("exit_extension: colligation spaces do not match");
  LinearRelation tau = LinearRelation::graph_of(
      lifted.lifted.n2(), lifted.lifted.n1(), d.connecting());
  return extension(lifted.lifted, tau);
}

Matrix generalized_resolvent(const BoundaryTriplet& t,
                             const UnitaryColligation& d, Complex lambda) {
  double r = std::abs(lambda);
  if (std::abs(r - 1.0) < 1e-12 || r < 1e-6)
    throw RegionViolation("generalized_resolvent: lambda off-region");
  auto [v1, v2] = kernel_extensions(t);
  if (r > 1.0) {
    Matrix theta = char_function(d, 1.0 / lambda);
    Matrix m1 = weyl(t, 1, lambda);
    int d2 = t.n2().dim();
    Matrix core = Matrix::Identity(d2, d2) - m1 * theta;
    Matrix middle =
        theta * safe_inverse(core, "generalized_resolvent: I - M_1 Theta singular");
    return v1.resolvent(lambda) -
           (1.0 / lambda) * gamma(t, 1, lambda) * middle * gamma_sharp(t, 2, lambda);
  }
  Matrix theta_s = indef_adjoint(char_function(d, std::conj(lambda)), t.n2(), t.n1());
  Matrix m2 = weyl(t, 2, lambda);
  int d1 = t.n1().dim();
  Matrix core = Matrix::Identity(d1, d1) - m2 * theta_s;
  Matrix middle =
      theta_s * safe_inverse(core, "generalized_resolvent: I - M_2 Theta^* singular");
  return v2.resolvent(lambda) +
         (1.0 / lambda) * gamma(t, 2, lambda) * middle * gamma_sharp(t, 1, lambda);
}

Matrix compress(const LinearRelation& vtilde, Complex lambda, int dim_h) {
  Matrix full = vtilde.resolvent(lambda);
  return full.bottomRightCorner(dim_h, dim_h);
}

Matrix cocompress(const LinearRelation& vtilde, Complex lambda, int dim_h) {
  // (I - lambda Vtilde)^{-1} = -(1/lambda)(Vtilde - 1/lambda)^{-1}.
  Matrix full = -(1.0 / lambda) * vtilde.resolvent(1.0 / lambda);
  return full.bottomRightCorner(dim_h, dim_h);
}

Matrix coresolvent(const BoundaryTriplet& t, const UnitaryColligation& d,
                   Complex lambda) {
  double r = std::abs(lambda);
  if (std::abs(r - 1.0) < 1e-12 || r < 1e-6)
    throw RegionViolation("coresolvent: lambda off-region");
  auto [v1, v2] = kernel_extensions(t);
  Complex mu = 1.0 / lambda;
  if (r < 1.0) {
    Matrix theta = char_function(d, lambda);
    Matrix m1 = weyl(t, 1, mu);
    int d2 = t.n2().dim();
    Matrix core = Matrix::Identity(d2, d2) - m1 * theta;
    Matrix middle = theta * safe_inverse(core, "coresolvent: I - M_1 Theta singular");
    Matrix g2s = indef_adjoint(gamma(t, 2, std::conj(lambda)), t.n2(),
                               t.inst().space);
    return -(1.0 / lambda) * v1.resolvent(mu) +
           gamma(t, 1, mu) * middle * g2s;
  }
  Matrix theta_s =
      indef_adjoint(char_function(d, 1.0 / std::conj(lambda)), t.n2(), t.n1());
  Matrix m2 = weyl(t, 2, mu);
  int d1 = t.n1().dim();
  Matrix core = Matrix::Identity(d1, d1) - m2 * theta_s;
  Matrix middle = theta_s * safe_inverse(core, "coresolvent: I - M_2 Theta# singular");
  Matrix g1s =
      indef_adjoint(gamma(t, 1, std::conj(lambda)), t.n1(), t.inst().space);
  return -(1.0 / lambda) * v2.resolvent(mu) - gamma(t, 2, mu) * middle * g1s;
}

MinimalDecomposition minimal_decompose(const LinearRelation& vtilde, int dim_h,
                                       unsigned seed) {
  const PontryaginSpace& space = vtilde.from();
  int nt = space.dim();
  Matrix emb = Matrix::Zero(nt, dim_h);
  emb.bottomRows(dim_h) = Matrix::Identity(dim_h, dim_h);
  Subspace hm(nt, emb);

  std::vector<Complex> points = {{2, 0},   {-2, 0},  {3, 0},     {-3, 0},
                                 {0.5, 0}, {-0.5, 0}, {1.0 / 3, 0}, {-1.0 / 3, 0},
                                 {0, 2},   {0, 0.5}};
  std::mt19937 rng(seed + 2024);
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
  std::uniform_real_distribution<double> rad(0.1, 0.9);
  int stable = 0;
  std::size_t idx = 0;
  while (stable < 2) {
    Complex l;
    if (idx < points.size()) {
      l = points[idx++];
    } else {
      double a = ang(rng);
      double r = rng() % 2 ? rad(rng) : 1.0 / rad(rng);
      l = std::polar(r, a);
    }
    Matrix res;
    try {
      res = vtilde.resolvent(l);
    } catch (const NotInvertible&) {
      continue;
    }
    int before = hm.dim();
    hm = hm.add(Subspace(nt, Matrix(res * emb)));
    if (hm.dim() == before)
      ++stable;
    else
      stable = 0;
    if (hm.dim() == nt) break;
  }

  MinimalDecomposition out;
  out.hm = hm;
  out.hu = ortho_companion(space, hm);
  out.minimal = hm.dim() == nt;
  Signature sig = subspace_signature(space, out.hu);
  if (sig.neg > 0 || sig.iso > 0)
    throw NotRegular("minimal_decompose: reducing complement is not positive");
  return out;
}

Matrix compress_restricted(const LinearRelation& vtilde, const Subspace& s,
                           Complex lambda, int dim_h) {
  Matrix w = vtilde.operator_matrix();
  const Matrix& bm = s.basis();
  Matrix wm = bm.adjoint() * w * bm;
  if ((w * bm - bm * wm).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("compress_restricted: subspace not invariant");
  int k = s.dim();
  Matrix core = wm - lambda * Matrix::Identity(k, k);
  Matrix inv = safe_inverse(core, "compress_restricted: lambda in spectrum");
  int nt = s.ambient_dim();
  Matrix emb = Matrix::Zero(nt, dim_h);
  emb.bottomRows(dim_h) = Matrix::Identity(dim_h, dim_h);
  Matrix full = bm * inv * bm.adjoint() * emb;
  return full.bottomRows(dim_h);
}

Matrix random_j_unitary(const PontryaginSpace& space, unsigned seed) {
  int n = space.dim();
  if (n == 0) return Matrix(0, 0);
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix a(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) a(i, j) = Complex(dist(rng), dist(rng));
    Matrix k = 0.5 * (a - Matrix(a.adjoint()));  // skew-Hermitian
    Matrix s = space.gram_solve(k);              // indefinitely skew
    Matrix id = Matrix::Identity(n, n);
    Eigen::FullPivLU<Matrix> lu(id - s);
    if (!lu.isInvertible()) continue;
    Matrix u = (id + s) * lu.inverse();
    Matrix us = indef_adjoint(u, space, space);
    if ((us * u - id).cwiseAbs().maxCoeff() < 1e-10) return u;
  }
  throw std::runtime_error("random_j_unitary: generation failed");
}

UnitaryColligation random_simple_colligation(int state_dim, int neg_index,
                                             const PontryaginSpace& n2,
                                             const PontryaginSpace& n1,
                                             unsigned seed) {
  if (neg_index < 0 || neg_index > state_dim)
    throw std::invalid_argument("random_simple_colligation: bad signature");
  if (n2.dim() != n1.dim() || !n2.same_as(n1))
    throw std::invalid_argument(
        "random_simple_colligation: input and output spaces must coincide");
  if (state_dim > 0 && n2.dim() == 0)
    throw std::invalid_argument(
        "random_simple_colligation: nonzero state needs open channels");
  PontryaginSpace state = PontryaginSpace::diagonal(state_dim - neg_index,
                                                    neg_index);
  PontryaginSpace big(Matrix(
      [&] {
        Matrix b = Matrix::Zero(state_dim + n2.dim(), state_dim + n2.dim());
        b.topLeftCorner(state_dim, state_dim) = state.gram();
        b.bottomRightCorner(n2.dim(), n2.dim()) = n2.gram();
        return b;
      }()));
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix u = random_j_unitary(big, seed + 1000 * attempt);
    int s = state_dim, i = n2.dim();
    UnitaryColligation d(state, n2, n1, u.topLeftCorner(s, s),
                         u.topRightCorner(s, i), u.bottomLeftCorner(i, s),
                         u.bottomRightCorner(i, i));
    if (i > 0 && !is_simple_colligation(d)) continue;
    return d;
  }
  throw std::runtime_error("random_simple_colligation: no simple draw found");
}

}  // namespace pk
