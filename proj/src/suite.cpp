#include "pk/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "pk/colligation.hpp"

namespace pk {

namespace {

double rel_error(const Matrix& got, const Matrix& want) {
  if (!want.size()) return 0.0;
  double scale = std::max(1.0, want.cwiseAbs().maxCoeff());
  return (got - want).cwiseAbs().maxCoeff() / scale;
}

class Runner {
 public:
  Runner(const InstanceFile& file, unsigned seed, double tolerance)
      : file_(file), seed_(seed), tol_(tolerance) {}

  Report run(SuiteKind kind) {
    triplet();  // surface construction failures as a named check
    if (kind == SuiteKind::core || kind == SuiteKind::all) core();
    if (kind == SuiteKind::weyl || kind == SuiteKind::all) weyl_suite();
    if (kind == SuiteKind::resolvent || kind == SuiteKind::all)
      resolvent_suite();
    if (kind == SuiteKind::gres || kind == SuiteKind::all) gres_suite();
    Report r;
    r.label = file_.inst.label;
    r.checks = std::move(checks_);
    std::sort(r.checks.begin(), r.checks.end(),
              [](const Check& a, const Check& b) { return a.name < b.name; });
    r.pass = std::all_of(r.checks.begin(), r.checks.end(),
                         [](const Check& c) { return c.pass; });
    return r;
  }

 private:
  const InstanceFile& file_;
  unsigned seed_;
  double tol_;
  std::vector<Check> checks_;
  std::optional<BoundaryTriplet> triplet_;
  bool triplet_failed_ = false;

  const BoundaryTriplet* triplet() {
    if (triplet_) return &*triplet_;
    if (triplet_failed_) return nullptr;
    if (file_.triplet) {
      triplet_ = *file_.triplet;
      return &*triplet_;
    }
    try {
      triplet_ = construct_triplet(file_.inst, 0);
      return &*triplet_;
    } catch (const std::exception& e) {
      triplet_failed_ = true;
      Check c{"triplet-construction", std::numeric_limits<double>::infinity(),
              tol_, false, 0.0};
      checks_.push_back(c);
      return nullptr;
    }
  }

  void add(const std::string& name, double residual, double threshold) {
    checks_.push_back(Check{name, residual, threshold, residual <= threshold,
                            0.0});
  }

  template <class Fn>
  void checked(const std::string& name, double threshold, Fn&& fn) {
    auto start = std::chrono::steady_clock::now();
    double residual;
    try {
      residual = fn();
    } catch (const std::exception&) {
      residual = std::numeric_limits<double>::infinity();
    }
    Check c{name, residual, threshold, residual <= threshold, 0.0};
    c.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    checks_.push_back(c);
  }

  std::vector<LinearRelation> taus() {
    if (!file_.taus.empty()) return file_.taus;
    const BoundaryTriplet* t = triplet();
    if (!t) return {};
    std::vector<LinearRelation> out;
    std::mt19937 rng(seed_ + 41);
    std::normal_distribution<double> dist(0.0, 1.0);
    int d1 = t->n1().dim(), d2 = t->n2().dim();
    for (int k = 0; k < 5; ++k) {
      Matrix r(d1, d2);
      for (int c = 0; c < d2; ++c)
        for (int rr = 0; rr < d1; ++rr)
          r(rr, c) = Complex(dist(rng), dist(rng));
      out.push_back(LinearRelation::graph_of(t->n2(), t->n1(), r));
    }
    return out;
  }

  void core() {
    const BoundaryTriplet* t = triplet();
    if (!t) return;
    TripletReport rep = verify_triplet(*t);
    add("green-identity", rep.green_residual, 1e-9);
    add("surjectivity", rep.surjective ? 0.0 : 1.0, 0.5);
    add("kernel-graph", rep.kernel_distance, 1e-9);
    checked("C:V12", 1e-9, [&] {
      auto [v1, v2] = kernel_extensions(*t);
      return v2.graph().distance(v1.inverse().adjoint().graph());
    });
    auto ts = taus();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const LinearRelation& tau = ts[i];
      std::string suffix = "/tau" + std::to_string(i);
      checked("T:1-adjoint" + suffix, 1e-9, [&] {
        LinearRelation vt = extension(*t, tau);
        LinearRelation vts = extension(*t, tau.inverse().adjoint());
        return vts.graph().distance(vt.inverse().adjoint().graph());
      });
      checked("T:1-classes" + suffix, 0.5, [&] {
        CorrespondenceReport cr =
            classify_extension_correspondence(*t, tau, seed_ + 17 + (unsigned)i);
        return cr.all() ? 0.0 : 1.0;
      });
    }
  }

  void weyl_suite() {
    const BoundaryTriplet* t = triplet();
    if (!t) return;
    std::vector<Complex> in = interior_grid(*t);
    std::vector<Complex> ex = exterior_grid(*t);
    auto pairs = [&](const std::vector<Complex>& a,
                     const std::vector<Complex>& b) {
      std::vector<std::pair<Complex, Complex>> out;
      for (std::size_t i = 0; i < a.size() && out.size() < 20; ++i)
        for (std::size_t j = 0; j < b.size() && out.size() < 20; j += 3)
          out.emplace_back(a[i], b[(i + j) % b.size()]);
      return out;
    };
    auto max_identity = [&](int which,
                            const std::vector<std::pair<Complex, Complex>>& ps) {
      double m = 0.0;
      for (auto [l, mu] : ps) {
        try {
          m = std::max(m, identity_residual(*t, which, l, mu));
        } catch (const RegionViolation&) {
        } catch (const GammaNotInvertible&) {
        }
      }
      return m;
    };
    checked("M1", 1e-8, [&] { return max_identity(1, pairs(ex, ex)); });
    checked("M2", 1e-8, [&] { return max_identity(2, pairs(in, in)); });
    checked("M3", 1e-8, [&] { return max_identity(3, pairs(in, ex)); });
    checked("M4", 1e-8, [&] { return max_identity(4, pairs(ex, in)); });
    checked("E:1.8", 1e-8, [&] {
      double m = 0.0;
      for (auto [l, mu] : pairs(ex, ex))
        m = std::max(m, propagation_residual(*t, 1, l, mu));
      for (auto [l, mu] : pairs(in, in))
        m = std::max(m, propagation_residual(*t, 2, l, mu));
      return m;
    });
    checked("L:1.5", 1e-8, [&] {
      double m = 0.0;
      for (Complex l : ex) m = std::max(m, l15_residual(*t, 1, l));
      for (Complex l : in) m = std::max(m, l15_residual(*t, 2, l));
      return m;
    });
    checked("T:1.2", 1e-9, [&] {
      double m = 0.0;
      for (Complex l : ex) {
        Matrix m1 = weyl(*t, 1, l);
        Matrix m2s = weyl_sharp(*t, 2, l);
        if (m1.size()) m = std::max(m, (m1 - m2s).cwiseAbs().maxCoeff());
      }
      return m;
    });
    checked("P:1.1", 0.5, [&] {
      std::vector<std::pair<Complex, Matrix>> pool;
      for (Complex l : in) {
        try {
          pool.emplace_back(l, weyl(*t, 2, l));
        } catch (const std::exception&) {
        }
      }
      if (pool.empty()) return 0.0;
      NegSquaresEstimate est =
          neg_squares_resampled(pool, t->n2(), t->n1(), seed_ + 5);
      int kappa = t->inst().space.neg_index();
      return est.count <= kappa ? 0.0 : double(est.count - kappa);
    });
  }

  void resolvent_suite() {
    const BoundaryTriplet* t = triplet();
    if (!t) return;
    std::vector<Complex> in = interior_grid(*t);
    std::vector<Complex> ex = exterior_grid(*t);
    auto ts = taus();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const LinearRelation& tau = ts[i];
      std::string suffix = "/tau" + std::to_string(i);
      LinearRelation vt = extension(*t, tau);
      TauParam p = TauParam::from_relation(tau);
      Matrix k2 = tau.first_components();
      Matrix k1 = tau.second_components();
      TauParam pp = TauParam::from_pair(t->n2(), t->n1(), k1, k2);

      auto region_check = [&](const std::vector<Complex>& grid,
                              const TauParam& param, ResolventForm form) {
        double m = 0.0;
        int used = 0;
        for (Complex l : grid) {
          Matrix want, got;
          try {
            want = vt.resolvent(l);
            got = krein_resolvent(*t, param, l, form);
          } catch (const std::exception&) {
            continue;
          }
          m = std::max(m, rel_error(got, want));
          if (++used >= 10) break;
        }
        return m;
      };
      checked("E:res0" + suffix, 1e-8,
              [&] { return region_check(ex, p, ResolventForm::relation); });
      checked("E:res00" + suffix, 1e-8,
              [&] { return region_check(in, p, ResolventForm::relation); });
      checked("E:res1" + suffix, 1e-8,
              [&] { return region_check(ex, pp, ResolventForm::pair); });
      checked("E:res2" + suffix, 1e-8,
              [&] { return region_check(in, pp, ResolventForm::pair); });
      checked("res1-eigenvalues" + suffix, 0.5, [&] {
        // boundary-pencil classification must agree with the spectrum.
        PencilSpectrum sp = vt.pencil_spectrum();
        if (sp.degenerate) return 0.0;
        double bad = 0.0;
        for (Complex l : sp.eigenvalues) {
          if (std::abs(std::abs(l) - 1.0) < 1e-3 || std::abs(l) < 1e-3)
            continue;
          if (point_class(*t, p, l) == PointClass::regular) bad += 1.0;
        }
        return bad;
      });
      checked("connection" + suffix, 1e-8, [&] {
        double m = 0.0;
        int used = 0;
        for (Complex l : in) {
          try {
            m = std::max(m, sharp_consistency(*t, p, l));
          } catch (const std::exception&) {
            continue;
          }
          if (++used >= 5) break;
        }
        return m;
      });
    }
    if (t->n1().dim() == t->n2().dim() && t->n1().same_as(t->n2()) &&
        t->n1().dim() > 0) {
      checked("E:res11", 1e-8, [&] {
        Matrix u = random_j_unitary(t->n2(), seed_ + 71);
        LinearRelation tau = LinearRelation::graph_of(t->n2(), t->n1(), u);
        LinearRelation vt = extension(*t, tau);
        TauParam p = TauParam::from_relation(tau);
        double m = 0.0;
        int used = 0;
        for (Complex l : ex) {
          Matrix want, got;
          try {
            want = vt.resolvent(l);
            got = krein_resolvent(*t, p, l, ResolventForm::unitary);
          } catch (const std::exception&) {
            continue;
          }
          m = std::max(m, rel_error(got, want));
          if (++used >= 10) break;
        }
        return m;
      });
    }
  }

  void gres_suite() {
    const BoundaryTriplet* t = triplet();
    if (!t) return;
    std::vector<Complex> in = interior_grid(*t);
    std::vector<Complex> ex = exterior_grid(*t);

    // Moebius transport laws on the base triplet.
    checked("GMF", 1e-9, [&] {
      MoebiusContext ctx = transform_triplet(*t, Complex(2.0, 0.0));
      double m = 0.0;
      int used = 0;
      for (Complex l : ex) {
        try {
          TransformLawReport rep = transform_laws(ctx, l);
          m = std::max(m, std::max(rep.m_residual, rep.gamma_residual));
        } catch (const std::exception&) {
          continue;
        }
        if (++used >= 10) break;
      }
      return m;
    });

    if (!(t->n1().dim() == t->n2().dim() && t->n1().same_as(t->n2())))
      return;  // colligation channels need matching boundary spaces

    std::optional<UnitaryColligation> dopt = file_.colligation;
    if (!dopt) {
      try {
        dopt = random_simple_colligation(1, 0, t->n2(), t->n1(), seed_ + 97);
      } catch (const std::exception&) {
        return;
      }
    }
    const UnitaryColligation& d = *dopt;

    checked("E:komp", 1e-10,
            [&] { return verify_colligation(d).max_residual; });
    checked("ChF", 1e-10, [&] {
      double m = 0.0;
      for (Complex l : {Complex(0.1, 0.0), Complex(0.2, 0.1),
                        Complex(-0.15, 0.05), Complex(0.0, 0.25),
                        Complex(0.3, -0.2)}) {
        m = std::max(m, (char_function(d, l) - char_function_projected(d, l))
                            .cwiseAbs()
                            .maxCoeff());
      }
      return m;
    });

    LiftedTriplet lifted = lift_triplet(*t, d.state);
    checked("gamma12", 1e-9, [&] {
      double m = 0.0;
      int p = d.state.dim();
      int used = 0;
      for (Complex l : ex) {
        try {
          Matrix g1t = gamma(lifted.lifted, 1, l);
          Matrix expected = Matrix::Zero(g1t.rows(), g1t.cols());
          expected.topLeftCorner(p, p) =
              (1.0 / l) * Matrix::Identity(p, p);
          expected.bottomRightCorner(t->inst().space.dim(), t->n1().dim()) =
              gamma(*t, 1, l);
          m = std::max(m, (g1t - expected).cwiseAbs().maxCoeff());
        } catch (const std::exception&) {
          continue;
        }
        if (++used >= 5) break;
      }
      used = 0;
      for (Complex l : in) {
        try {
          Matrix g2t = gamma(lifted.lifted, 2, l);
          Matrix expected = Matrix::Zero(g2t.rows(), g2t.cols());
          expected.topLeftCorner(p, p) = Matrix::Identity(p, p);
          expected.bottomRightCorner(t->inst().space.dim(), t->n2().dim()) =
              gamma(*t, 2, l);
          m = std::max(m, (g2t - expected).cwiseAbs().maxCoeff());
        } catch (const std::exception&) {
          continue;
        }
        if (++used >= 5) break;
      }
      return m;
    });
    checked("M12", 1e-9, [&] {
      double m = 0.0;
      int p = d.state.dim();
      int used = 0;
      for (Complex l : ex) {
        try {
          Matrix m1t = weyl(lifted.lifted, 1, l);
          Matrix expected = Matrix::Zero(m1t.rows(), m1t.cols());
          expected.topLeftCorner(p, p) =
              (1.0 / l) * Matrix::Identity(p, p);
          expected.bottomRightCorner(t->n2().dim(), t->n1().dim()) =
              weyl(*t, 1, l);
          m = std::max(m, (m1t - expected).cwiseAbs().maxCoeff());
        } catch (const std::exception&) {
          continue;
        }
        if (++used >= 5) break;
      }
      used = 0;
      for (Complex l : in) {
        try {
          Matrix m2t = weyl(lifted.lifted, 2, l);
          Matrix expected = Matrix::Zero(m2t.rows(), m2t.cols());
          expected.topLeftCorner(p, p) = l * Matrix::Identity(p, p);
          expected.bottomRightCorner(t->n1().dim(), t->n2().dim()) =
              weyl(*t, 2, l);
          m = std::max(m, (m2t - expected).cwiseAbs().maxCoeff());
        } catch (const std::exception&) {
          continue;
        }
        if (++used >= 5) break;
      }
      return m;
    });

    LinearRelation vtau = exit_extension(lifted, d);
    int nh = t->inst().space.dim();
    auto gres_check = [&](const std::vector<Complex>& grid) {
      double m = 0.0;
      int used = 0;
      for (Complex l : grid) {
        Matrix want, got;
        try {
          want = compress(vtau, l, nh);
          got = generalized_resolvent(*t, d, l);
        } catch (const std::exception&) {
          continue;
        }
        m = std::max(m, rel_error(got, want));
        if (++used >= 10) break;
      }
      return m;
    };
    checked("gres1", 1e-8, [&] { return gres_check(ex); });
    checked("gres2", 1e-8, [&] { return gres_check(in); });
    checked("C:cores", 1e-8, [&] {
      double m = 0.0;
      int used = 0;
      for (Complex l : in) {
        Matrix want, got;
        try {
          want = cocompress(vtau, l, nh);
          got = coresolvent(*t, d, l);
        } catch (const std::exception&) {
          continue;
        }
        m = std::max(m, rel_error(got, want));
        if (++used >= 5) break;
      }
      used = 0;
      for (Complex l : ex) {
        Matrix want, got;
        try {
          want = cocompress(vtau, l, nh);
          got = coresolvent(*t, d, l);
        } catch (const std::exception&) {
          continue;
        }
        m = std::max(m, rel_error(got, want));
        if (++used >= 5) break;
      }
      return m;
    });
    checked("RR'", 1e-10, [&] {
      double m = 0.0;
      for (Complex l :
           {Complex(3.0, 0.0), Complex(0.5, 0.2), Complex(-2.5, 0.5)}) {
        try {
          m = std::max(m, rr_residual(vtau, Complex(2.0, 0.0), l));
        } catch (const std::exception&) {
        }
      }
      return m;
    });
    checked("min2", 1e-9, [&] {
      MinimalDecomposition md = minimal_decompose(vtau, nh, seed_ + 3);
      bool simple = is_simple_colligation(d);
      if (simple != md.minimal)
        return std::numeric_limits<double>::infinity();
      if (md.minimal) return 0.0;
      double m = 0.0;
      for (Complex l : {Complex(3.0, 0.0), Complex(0.4, 0.1)}) {
        Matrix full = compress(vtau, l, nh);
        Matrix restricted = compress_restricted(vtau, md.hm, l, nh);
        m = std::max(m, (full - restricted).cwiseAbs().maxCoeff());
      }
      return m;
    });
  }
};

}  // namespace

SuiteKind suite_from_string(const std::string& s) {
  if (s == "core") return SuiteKind::core;
  if (s == "weyl") return SuiteKind::weyl;
  if (s == "resolvent") return SuiteKind::resolvent;
  if (s == "gres") return SuiteKind::gres;
  if (s == "all") return SuiteKind::all;
  throw std::invalid_argument("unknown suite: " + s);
}

Report run_suite(const InstanceFile& file, SuiteKind kind, unsigned seed,
                 double tolerance) {
  double saved = Tol::value();
  Tol::value() = tolerance;
  Report r;
  try {
    r = Runner(file, seed, tolerance).run(kind);
  } catch (...) {
    Tol::value() = saved;
    throw;
  }
  Tol::value() = saved;
  return r;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  if (std::isinf(v)) return "inf";
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

}  // namespace

std::string report_text(const Report& r) {
  std::string out = "instance: " + r.label + "\n";
  for (const Check& c : r.checks) {
    out += (c.pass ? "PASS " : "FAIL ") + c.name +
           " residual=" + format_double(c.residual) +
           " threshold=" + format_double(c.threshold) + "\n";
  }
  out += std::string("aggregate: ") + (r.pass ? "PASS" : "FAIL") + "\n";
  return out;
}

json report_json(const Report& r) {
  json checks = json::array();
  for (const Check& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"residual", format_double(c.residual)},
                      {"threshold", format_double(c.threshold)},
                      {"pass", c.pass}});
  }
  return json{{"instance", r.label}, {"checks", checks}, {"pass", r.pass}};
}

}  // namespace pk
