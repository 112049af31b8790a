#include <doctest.h>

#include "pk/boundary.hpp"
#include "pk/fixtures.hpp"

using namespace pk;

TEST_CASE("vstar of the shift is cut out by d = a") {
  BoundaryTriplet t = fixture_shift2();
  CHECK(t.vstar().graph_dim() == 3);
  // ((a,b),(c,d)) with d = a.
  Matrix probe(4, 1);
  probe << 1, 2, 5, 1;
  CHECK(t.vstar().graph().contains(Vector(probe / probe.norm())));
  probe << 1, 0, 0, 2;
  CHECK_FALSE(t.vstar().graph().contains(Vector(probe / probe.norm())));
}

TEST_CASE("boundary form vanishes exactly on the graph of V") {
  for (const std::string& name : fixture_names()) {
    BoundaryTriplet t = fixture_by_name(name);
    Matrix b = boundary_form(t.inst(), t.vstar());
    Matrix cv = t.vstar().graph().basis().adjoint() * t.inst().v.graph().basis();
    Matrix restricted = cv.adjoint() * b * cv;
    CHECK(restricted.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("fixture triplets pass the axioms") {
  for (const std::string& name : fixture_names()) {
    CAPTURE(name);
    TripletReport r = verify_triplet(fixture_by_name(name));
    CHECK(r.green_residual <= 1e-9);
    CHECK(r.surjective);
    CHECK(r.kernel_distance <= 1e-9);
    CHECK(r.pass);
  }
}

TEST_CASE("construct_triplet on fixtures reproduces a valid triplet") {
  for (const std::string& name : fixture_names()) {
    CAPTURE(name);
    BoundaryTriplet t = fixture_by_name(name);
    BoundaryTriplet built = construct_triplet(t.inst(), 0);
    CHECK(verify_triplet(built).pass);
    CHECK(built.n1().dim() == t.n1().dim());
    CHECK(built.n2().dim() == t.n2().dim());
  }
}

TEST_CASE("kappa1 routing and infeasibility") {
  BoundaryTriplet t = fixture_simple_p2();
  // p+ = p- = 1 here, so kappa1 = 1 is feasible and flips both Grams.
  BoundaryTriplet flipped = construct_triplet(t.inst(), 1);
  CHECK(flipped.n1().neg_index() == 1);
  CHECK(flipped.n2().neg_index() == 1);
  CHECK(verify_triplet(flipped).pass);
  CHECK_THROWS_AS(construct_triplet(t.inst(), 2), InfeasibleKappa1);
}

TEST_CASE("kernel extensions of shift2 are the frozen relations") {
  BoundaryTriplet t = fixture_shift2();
  auto [v1, v2] = kernel_extensions(t);
  // V1: c = 0, d = a  ->  the nilpotent matrix [[0,0],[1,0]].
  Matrix m1(2, 2);
  m1 << 0, 0, 1, 0;
  CHECK(v1.equals(LinearRelation::graph_of(t.inst().space, t.inst().space, m1)));
  // V2: b = 0, d = a  ->  {((a,0),(c,a))} with mul = span{e1}.
  CHECK(v2.mul().dim() == 1);
  Vector e1(2);
  e1 << 1, 0;
  CHECK(v2.mul().contains(e1));
  CHECK(v2.graph_dim() == 2);
}

TEST_CASE("V2 is the indefinite co-inverse of V1") {
  for (const std::string& name : fixture_names()) {
    CAPTURE(name);
    auto [v1, v2] = kernel_extensions(fixture_by_name(name));
    CHECK(v2.equals(v1.inverse().adjoint()));
  }
}

TEST_CASE("extension by a parameter relation") {
  BoundaryTriplet t = fixture_shift2();
  // tau = graph(4): Gamma_1 = 4 Gamma_2, i.e. c = 4b on vstar.
  LinearRelation tau = LinearRelation::graph_of(
      t.n2(), t.n1(), Matrix(4 * Matrix::Identity(1, 1)));
  LinearRelation vt = extension(t, tau);
  CHECK(vt.graph_dim() == 2);
  Matrix probe(4, 1);
  probe << 1, 2, 8, 1;  // a=1,b=2,c=8=4b,d=a
  CHECK(vt.graph().contains(Vector(probe / probe.norm())));
  // V_tau contains V.
  CHECK(vt.contains(t.inst().v));
}

TEST_CASE("exceptional sets of shift2 with tau = graph(4)") {
  BoundaryTriplet t = fixture_shift2();
  ExceptionalSets ex = exceptional_sets(t);
  // V1 nilpotent: no exterior eigenvalues; V2 has only infinity.
  CHECK(ex.lambda1.empty());
  CHECK(ex.lambda2.empty());
  LinearRelation tau = LinearRelation::graph_of(
      t.n2(), t.n1(), Matrix(4 * Matrix::Identity(1, 1)));
  PencilSpectrum sp = extension(t, tau).pencil_spectrum();
  REQUIRE(sp.eigenvalues.size() == 2);
  CHECK(std::abs(sp.eigenvalues[0] - Complex(-2, 0)) < 1e-7);
  CHECK(std::abs(sp.eigenvalues[1] - Complex(2, 0)) < 1e-7);
}

TEST_CASE("extension correspondence on fixtures") {
  for (const std::string& name : fixture_names()) {
    CAPTURE(name);
    BoundaryTriplet t = fixture_by_name(name);
    LinearRelation tau = LinearRelation::graph_of(
        t.n2(), t.n1(), Matrix(Complex(0.3, 0.4) * Matrix::Identity(1, 1)));
    CorrespondenceReport r = classify_extension_correspondence(t, tau, 11);
    CHECK(r.nesting);
    CHECK(r.adjoint_law);
    CHECK(r.unitary);
    CHECK(r.isometric);
    CHECK(r.coisometric);
  }
}

TEST_CASE("random instances admit valid triplets") {
  int degenerate_seen = 0;
  for (unsigned seed = 1; seed <= 12; ++seed) {
    int dim = 2 + static_cast<int>(seed % 5);
    int kappa = static_cast<int>(seed % 3);
    if (kappa > dim - 1) kappa = dim - 1;
    int dom = 1 + static_cast<int>(seed % dim);
    bool degenerate = (seed % 3 == 1) && kappa >= 1;
    if (degenerate && dom == dim) dom = dim - 1;
    if (degenerate) ++degenerate_seen;
    CAPTURE(seed);
    IsometryInstance inst = random_instance(dim, kappa, dom, degenerate, seed);
    BoundaryTriplet t = construct_triplet(inst, 0);
    CHECK(verify_triplet(t).pass);
  }
  CHECK(degenerate_seen > 0);
}
