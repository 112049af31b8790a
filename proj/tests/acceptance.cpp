// Acceptance harness: one pass/fail line per criterion, nonzero exit on any
// failure.

#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pk/suite.hpp"

using namespace pk;

namespace {

int failures = 0;

void report(int number, const std::string& title, bool ok,
            const std::string& detail) {
  std::printf("criterion %2d [%s] %s%s\n", number, ok ? "pass" : "FAIL",
              title.c_str(),
              detail.empty() ? "" : ("  (" + detail + ")").c_str());
  if (!ok) ++failures;
}

Matrix random_matrix(int rows, int cols, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  return m;
}

struct RandomCase {
  int dim, kappa, dom;
  bool degenerate;
  unsigned seed;
};

std::vector<RandomCase> random_cases(int count) {
  std::vector<RandomCase> out;
  for (int i = 0; i < count; ++i) {
    unsigned seed = 100 + static_cast<unsigned>(i);
    int dim = 2 + i % 7;                      // 2..8
    int kappa = std::min(i % 3, dim - 1);     // 0..2
    int dom = 1 + i % dim;                    // 1..dim
    bool degenerate = (i % 3 == 1) && kappa >= 1;
    if (degenerate && dom == dim) dom = dim - 1;
    out.push_back({dim, kappa, dom, degenerate, seed});
  }
  return out;
}

bool criterion1(std::string& detail) {
  int degenerate_count = 0;
  for (const RandomCase& c : random_cases(100)) {
    if (c.degenerate) ++degenerate_count;
    IsometryInstance inst =
        random_instance(c.dim, c.kappa, c.dom, c.degenerate, c.seed);
    TripletReport r = verify_triplet(construct_triplet(inst, 0));
    if (!(r.green_residual <= 1e-9 && r.surjective &&
          r.kernel_distance <= 1e-9 && r.pass)) {
      detail = "instance seed " + std::to_string(c.seed);
      return false;
    }
  }
  if (degenerate_count < 20) {
    detail = "only " + std::to_string(degenerate_count) + " degenerate cases";
    return false;
  }
  detail = "100 instances, " + std::to_string(degenerate_count) + " degenerate";
  return true;
}

std::vector<BoundaryTriplet> acceptance_triplets() {
  std::vector<BoundaryTriplet> out;
  for (const std::string& name : fixture_names())
    out.push_back(fixture_by_name(name));
  for (const RandomCase& c : random_cases(24)) {
    if (out.size() >= 10) break;
    if (c.dom == c.dim) continue;  // unitary: empty boundary spaces
    IsometryInstance inst =
        random_instance(c.dim, c.kappa, c.dom, c.degenerate, c.seed);
    out.push_back(construct_triplet(inst, 0));
  }
  return out;
}

bool criterion2(std::string& detail) {
  std::mt19937 rng(2026);
  for (const BoundaryTriplet& t : acceptance_triplets()) {
    auto [v1, v2] = kernel_extensions(t);
    if (!v2.equals(v1.inverse().adjoint())) {
      detail = "V2 != V1^{-[*]} on " + t.inst().label;
      return false;
    }
    int n1 = t.n1().dim(), n2 = t.n2().dim();
    for (int k = 0; k < 5; ++k) {
      LinearRelation tau = LinearRelation::graph_of(
          t.n2(), t.n1(), random_matrix(n1, n2, rng));
      LinearRelation lhs = extension(t, tau.inverse().adjoint());
      LinearRelation rhs = extension(t, tau).inverse().adjoint();
      if (!lhs.equals(rhs)) {
        detail = "tau adjoint law on " + t.inst().label;
        return false;
      }
    }
  }
  return true;
}

bool criterion3(std::string& detail) {
  for (const BoundaryTriplet& t : acceptance_triplets()) {
    std::vector<Complex> ex = exterior_grid(t);
    std::vector<Complex> in = interior_grid(t);
    int pairs = 0;
    for (std::size_t i = 0; i < ex.size() && pairs < 20; i += 2, ++pairs) {
      Complex le = ex[i], mue = ex[(i + 7) % ex.size()];
      Complex li = in[i], mui = in[(i + 7) % in.size()];
      double worst = std::max(
          {identity_residual(t, 1, le, mue), identity_residual(t, 2, li, mui),
           identity_residual(t, 3, li, mue),
           identity_residual(t, 4, le, mui),
           propagation_residual(t, 1, le, mue),
           propagation_residual(t, 2, li, mui)});
      if (!(worst <= 1e-8)) {
        detail = "identity residual " + std::to_string(worst) + " on " +
                 t.inst().label;
        return false;
      }
    }
    for (Complex l : ex) {
      double r = (weyl(t, 1, l) - weyl_sharp(t, 2, l)).cwiseAbs().maxCoeff();
      if (!(r <= 1e-9)) {
        detail = "M1 != M2^# on " + t.inst().label;
        return false;
      }
    }
  }
  return true;
}

bool criterion4(std::string& detail) {
  BoundaryTriplet shift = fixture_shift2();
  LinearRelation tau4 = LinearRelation::graph_of(
      shift.n2(), shift.n1(), Matrix(4 * Matrix::Identity(1, 1)));
  Matrix frozen(2, 2);
  frozen << -3, -4, -1, -3;
  frozen /= 5.0;
  Matrix r = krein_resolvent(shift, TauParam::from_relation(tau4),
                             Complex(3, 0));
  if ((r - frozen).cwiseAbs().maxCoeff() > 1e-12) {
    detail = "frozen value off by " +
             std::to_string((r - frozen).cwiseAbs().maxCoeff());
    return false;
  }
  std::mt19937 rng(9);
  for (const BoundaryTriplet& t : acceptance_triplets()) {
    int n1 = t.n1().dim(), n2 = t.n2().dim();
    std::vector<std::pair<TauParam, LinearRelation>> params;
    LinearRelation graph_tau =
        LinearRelation::graph_of(t.n2(), t.n1(), random_matrix(n1, n2, rng));
    params.emplace_back(TauParam::from_relation(graph_tau), graph_tau);
    Matrix k2 = random_matrix(n2, n2, rng), k1 = random_matrix(n1, n2, rng);
    Matrix stacked(n2 + n1, n2);
    stacked << k2, k1;
    params.emplace_back(TauParam::from_pair(t.n2(), t.n1(), k1, k2),
                        LinearRelation(t.n2(), t.n1(),
                                       Subspace(n2 + n1, stacked)));
    if (n1 == n2 && t.n1().gram().isApprox(t.n2().gram())) {
      Matrix u = random_j_unitary(t.n1(), 31);
      LinearRelation utau = LinearRelation::graph_of(t.n2(), t.n1(), u);
      TauParam up = TauParam::from_relation(utau);
      params.emplace_back(up, utau);
    }
    std::vector<Complex> points = exterior_grid(t);
    std::vector<Complex> in = interior_grid(t);
    points.insert(points.end(), in.begin(), in.end());
    for (std::size_t pi = 0; pi < params.size(); ++pi) {
      const auto& [param, tau] = params[pi];
      LinearRelation vt = extension(t, tau);
      int checked = 0;
      for (Complex l : points) {
        Matrix want, got;
        try {
          want = vt.resolvent(l);
          ResolventForm form = ResolventForm::automatic;
          if (pi == 2) form = ResolventForm::unitary;
          got = krein_resolvent(t, param, l, form);
        } catch (const std::exception&) {
          continue;
        }
        double scale = std::max(1.0, want.cwiseAbs().maxCoeff());
        if ((got - want).cwiseAbs().maxCoeff() / scale > 1e-8) {
          detail = "form " + std::to_string(pi) + " on " + t.inst().label;
          return false;
        }
        if (++checked >= 8) break;
      }
      if (checked == 0) {
        detail = "no admissible points on " + t.inst().label;
        return false;
      }
    }
  }
  return true;
}

bool criterion5(std::string& detail) {
  BoundaryTriplet shift = fixture_shift2();
  LinearRelation tau4 = LinearRelation::graph_of(
      shift.n2(), shift.n1(), Matrix(4 * Matrix::Identity(1, 1)));
  PencilSpectrum sp = extension(shift, tau4).pencil_spectrum();
  if (sp.eigenvalues.size() != 2 ||
      std::abs(sp.eigenvalues[0] - Complex(-2, 0)) > 1e-7 ||
      std::abs(sp.eigenvalues[1] - Complex(2, 0)) > 1e-7) {
    detail = "SHIFT2 eigenvalues are not {2,-2}";
    return false;
  }
  std::mt19937 rng(17);
  int pairs = 0;
  std::vector<BoundaryTriplet> ts = acceptance_triplets();
  for (std::size_t i = 0; pairs < 20; i = (i + 1) % ts.size()) {
    const BoundaryTriplet& t = ts[i];
    LinearRelation tau = LinearRelation::graph_of(
        t.n2(), t.n1(), random_matrix(t.n1().dim(), t.n2().dim(), rng));
    TauParam p = TauParam::from_relation(tau);
    LinearRelation vt = extension(t, tau);
    PencilSpectrum spec = vt.pencil_spectrum();
    ++pairs;
    for (Complex l : spec.eigenvalues) {
      if (std::abs(std::abs(l) - 1.0) < 1e-2) continue;
      PointClass cls;
      try {
        cls = point_class(t, p, l);
      } catch (const RegionViolation&) {
        continue;
      }
      if (cls == PointClass::regular) {
        detail = "pencil eigenvalue classified regular on " + t.inst().label;
        return false;
      }
    }
    // A handful of off-spectrum points must classify as regular.
    for (Complex probe : {Complex(3.17, 1.29), Complex(0.23, 0.31)}) {
      bool near = false;
      for (Complex l : spec.eigenvalues)
        if (std::abs(l - probe) < 1e-3) near = true;
      if (near) continue;
      try {
        if (point_class(t, p, probe) == PointClass::eigenvalue) {
          detail = "regular point classified eigenvalue on " + t.inst().label;
          return false;
        }
      } catch (const std::exception&) {
      }
    }
  }
  detail = std::to_string(pairs) + " random pairs";
  return true;
}

int m2_count(const BoundaryTriplet& t, unsigned seed) {
  std::vector<std::pair<Complex, Matrix>> pool;
  for (Complex l : interior_grid(t)) {
    try {
      pool.emplace_back(l, weyl(t, 2, l));
    } catch (const std::exception&) {
    }
  }
  return neg_squares_resampled(pool, t.n2(), t.n1(), seed).count;
}

bool criterion6(std::string& detail) {
  for (const BoundaryTriplet& t : acceptance_triplets()) {
    int count = m2_count(t, 3);
    if (count > t.inst().space.neg_index()) {
      detail = "count " + std::to_string(count) + " exceeds kappa on " +
               t.inst().label;
      return false;
    }
  }
  if (m2_count(fixture_shift2(), 3) != 0 ||
      m2_count(fixture_simple_p2(), 3) != 1) {
    detail = "simple fixture counts are not (0, 1)";
    return false;
  }
  BoundaryTriplet shift = fixture_shift2();
  for (int excess = 0; excess <= 2; ++excess) {
    for (unsigned seed = 7; seed < 12; ++seed) {
      int state_dim = std::max(1, excess);
      UnitaryColligation d = random_simple_colligation(
          state_dim, excess, shift.n2(), shift.n1(), seed);
      std::vector<std::pair<Complex, Matrix>> pool;
      for (Complex l : interior_grid(shift)) {
        try {
          pool.emplace_back(l, char_function(d, l));
        } catch (const std::exception&) {
        }
      }
      int count = neg_squares_resampled(pool, d.input, d.output, seed).count;
      if (count != excess) {
        detail = "theta kernel count " + std::to_string(count) +
                 " for excess " + std::to_string(excess) + " seed " +
                 std::to_string(seed);
        return false;
      }
    }
  }
  return true;
}

bool criterion7(std::string& detail) {
  int lifted_count = 0;
  std::vector<BoundaryTriplet> ts = acceptance_triplets();
  std::vector<PontryaginSpace> hperps = {
      PontryaginSpace::hilbert(1), PontryaginSpace::hilbert(2),
      PontryaginSpace::diagonal(1, 1)};
  for (std::size_t i = 0; lifted_count < 20; i = (i + 1) % ts.size()) {
    const BoundaryTriplet& t = ts[i];
    const PontryaginSpace& hp = hperps[lifted_count % hperps.size()];
    LiftedTriplet lt = lift_triplet(t, hp);
    ++lifted_count;
    int p = hp.dim();
    for (Complex l : {Complex(2.3, 0.7), Complex(-3.1, 0.4)}) {
      Matrix m1 = weyl(lt.lifted, 1, l);
      Matrix g1 = gamma(lt.lifted, 1, l);
      Matrix em = Matrix::Zero(p + t.n1().dim(), p + t.n1().dim());
      em.topLeftCorner(p, p) = (1.0 / l) * Matrix::Identity(p, p);
      em.bottomRightCorner(t.n1().dim(), t.n1().dim()) = weyl(t, 1, l);
      Matrix eg = Matrix::Zero(p + t.inst().space.dim(), p + t.n1().dim());
      eg.topLeftCorner(p, p) = (1.0 / l) * Matrix::Identity(p, p);
      eg.bottomRightCorner(t.inst().space.dim(), t.n1().dim()) = gamma(t, 1, l);
      if ((m1 - em).cwiseAbs().maxCoeff() > 1e-9 ||
          (g1 - eg).cwiseAbs().maxCoeff() > 1e-9) {
        detail = "exterior block law on " + t.inst().label;
        return false;
      }
    }
    for (Complex l : {Complex(0.37, 0.21), Complex(-0.5, 0.12)}) {
      Matrix m2 = weyl(lt.lifted, 2, l);
      Matrix g2 = gamma(lt.lifted, 2, l);
      Matrix em = Matrix::Zero(p + t.n2().dim(), p + t.n2().dim());
      em.topLeftCorner(p, p) = l * Matrix::Identity(p, p);
      em.bottomRightCorner(t.n2().dim(), t.n2().dim()) = weyl(t, 2, l);
      Matrix eg = Matrix::Zero(p + t.inst().space.dim(), p + t.n2().dim());
      eg.topLeftCorner(p, p) = Matrix::Identity(p, p);
      eg.bottomRightCorner(t.inst().space.dim(), t.n2().dim()) = gamma(t, 2, l);
      if ((m2 - em).cwiseAbs().maxCoeff() > 1e-9 ||
          (g2 - eg).cwiseAbs().maxCoeff() > 1e-9) {
        detail = "interior block law on " + t.inst().label;
        return false;
      }
    }
  }
  detail = std::to_string(lifted_count) + " lifted instances";
  return true;
}

bool criterion8(std::string& detail) {
  for (const std::string& name : fixture_names()) {
    BoundaryTriplet t = fixture_by_name(name);
    UnitaryColligation d =
        random_simple_colligation(1, 0, t.n2(), t.n1(), 13);
    LinearRelation vt = exit_extension(lift_triplet(t, d.state), d);
    std::vector<std::vector<Complex>> regions = {exterior_grid(t),
                                                 interior_grid(t)};
    for (const std::vector<Complex>& region : regions) {
      int res_ok = 0, cores_ok = 0;
      for (Complex l : region) {
        try {
          Matrix want = compress(vt, l, t.inst().space.dim());
          Matrix got = generalized_resolvent(t, d, l);
          double scale = std::max(1.0, want.cwiseAbs().maxCoeff());
          if ((got - want).cwiseAbs().maxCoeff() / scale > 1e-8) {
            detail = "gres mismatch on " + name;
            return false;
          }
          ++res_ok;
        } catch (const std::exception&) {
        }
        try {
          Matrix want = cocompress(vt, l, t.inst().space.dim());
          Matrix got = coresolvent(t, d, l);
          double scale = std::max(1.0, want.cwiseAbs().maxCoeff());
          if ((got - want).cwiseAbs().maxCoeff() / scale > 1e-8) {
            detail = "coresolvent mismatch on " + name;
            return false;
          }
          ++cores_ok;
        } catch (const std::exception&) {
        }
      }
      if (res_ok < 10 || cores_ok < 10) {
        detail = "too few admissible points on " + name;
        return false;
      }
    }
  }
  return true;
}

bool criterion9(std::string& detail) {
  BoundaryTriplet t = fixture_shift2();
  int dim_h = t.inst().space.dim();
  for (unsigned seed = 1; seed <= 20; ++seed) {
    UnitaryColligation d =
        (seed % 2 == 0)
            ? random_simple_colligation(1, 0, t.n2(), t.n1(), seed)
            : UnitaryColligation(
                  PontryaginSpace::hilbert(1), t.n2(), t.n1(),
                  Matrix(std::polar(1.0, 0.1 * seed) *
                         Matrix::Identity(1, 1)),
                  Matrix::Zero(1, 1), Matrix::Zero(1, 1),
                  Matrix(std::polar(1.0, 0.2 * seed) *
                         Matrix::Identity(1, 1)));
    LinearRelation vt = exit_extension(lift_triplet(t, d.state), d);
    MinimalDecomposition md = minimal_decompose(vt, dim_h, seed);
    bool simple = is_simple_colligation(d);
    bool minimal = md.minimal && md.hm.dim() == vt.graph().ambient_dim() / 2;
    if (simple != minimal) {
      detail = "simplicity/minimality mismatch at seed " +
               std::to_string(seed);
      return false;
    }
    if (!simple) {
      for (Complex l : {Complex(2.7, 0.3), Complex(0.41, 0.11)}) {
        Matrix full = compress(vt, l, dim_h);
        Matrix restricted = compress_restricted(vt, md.hm, l, dim_h);
        if ((full - restricted).cwiseAbs().maxCoeff() > 1e-9) {
          detail = "min2 residual at seed " + std::to_string(seed);
          return false;
        }
      }
    }
  }
  return true;
}

bool criterion10(std::string& detail) {
  Complex z0(2, 0);
  for (const std::string& name : fixture_names()) {
    BoundaryTriplet t = fixture_by_name(name);
    MoebiusContext ctx = transform_triplet(t, z0);
    int law_points = 0;
    std::vector<Complex> pts = exterior_grid(t);
    std::vector<Complex> in = interior_grid(t);
    pts.insert(pts.end(), in.begin(), in.end());
    for (Complex l : pts) {
      if (std::abs(l - z0) < 0.2) continue;
      TransformLawReport rep;
      try {
        rep = transform_laws(ctx, l);
      } catch (const std::exception&) {
        continue;
      }
      if (rep.m_residual > 1e-9 || rep.gamma_residual > 1e-9) {
        detail = "transform law residual on " + name;
        return false;
      }
      if (++law_points >= 10) break;
    }
    if (law_points < 10) {
      detail = "too few law points on " + name;
      return false;
    }
    LinearRelation v1 = kernel_extensions(t).first;
    int rr_points = 0;
    for (Complex l : pts) {
      if (std::abs(l - z0) < 0.2) continue;
      double r;
      try {
        r = rr_residual(v1, z0, l);
      } catch (const std::exception&) {
        continue;
      }
      if (r > 1e-10) {
        detail = "RR residual " + std::to_string(r) + " on " + name;
        return false;
      }
      if (++rr_points >= 10) break;
    }
    if (rr_points < 10) {
      detail = "too few RR points on " + name;
      return false;
    }
  }
  return true;
}

bool criterion11(std::string& detail) {
  InstanceFile f = parse_instance(std::string(FIXTURE_DIR) + "/shift2.json");
  Report a = run_suite(f, SuiteKind::all, 7, 1e-9);
  Report b = run_suite(f, SuiteKind::all, 7, 1e-9);
  if (report_text(a) != report_text(b) ||
      report_json(a).dump() != report_json(b).dump()) {
    detail = "reports differ between runs";
    return false;
  }
  if (!a.pass) {
    detail = "suite does not pass";
    return false;
  }
  detail = std::to_string(a.checks.size()) + " identical checks";
  return true;
}

void run(int number, const std::string& title,
         const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report(number, title, ok, detail);
}

}  // namespace

int main() {
  run(1, "green identity on seeded random instances", criterion1);
  run(2, "kernel extensions and the tau adjoint law", criterion2);
  run(3, "gamma/weyl identities and propagation", criterion3);
  run(4, "krein resolvent formulas against direct inversion", criterion4);
  run(5, "boundary-pencil eigenvalue detection", criterion5);
  run(6, "negative-squares counts of the kernels", criterion6);
  run(7, "lifted triplet block laws", criterion7);
  run(8, "generalized (co)resolvents vs compression", criterion8);
  run(9, "simplicity equals minimality", criterion9);
  run(10, "moebius transform laws and resolvent identity", criterion10);
  run(11, "deterministic suite reports", criterion11);
  return failures == 0 ? 0 : 1;
}
