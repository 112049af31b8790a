#include "pk/fixtures.hpp"

#include <cmath>
#include <random>

namespace pk {

namespace {

BoundaryTriplet scalar_boundary_triplet(IsometryInstance inst,
                                        const Matrix& g1_pairs,
                                        const Matrix& g2_pairs) {
  TripletOverride ov;
  ov.kappa1 = 0;
  ov.n1_gram = Matrix::Identity(1, 1);
  ov.n2_gram = Matrix::Identity(1, 1);
  ov.gamma1_pairs = g1_pairs;
  ov.gamma2_pairs = g2_pairs;
  return triplet_from_override(inst, ov);
}

}  // namespace

BoundaryTriplet fixture_shift2() {
  PontryaginSpace space = PontryaginSpace::hilbert(2);
  Matrix dom(2, 1), img(2, 1);
  dom << 1, 0;
  img << 0, 1;
  IsometryInstance inst(
      space, LinearRelation::graph_on_domain(space, space, dom, img),
      "shift2");
  Matrix g1(1, 4), g2(1, 4);
  g1 << 0, 0, 1, 0;  // f'_1
  g2 << 0, 1, 0, 0;  // f_2
  return scalar_boundary_triplet(std::move(inst), g1, g2);
}

BoundaryTriplet fixture_neutral2() {
  PontryaginSpace space = PontryaginSpace::diagonal(1, 1);
  Matrix dom(2, 1), img(2, 1);
  dom << 1, 1;
  img << 1, 1;
  IsometryInstance inst(
      space, LinearRelation::graph_on_domain(space, space, dom, img),
      "neutral2");
  double s = 1.0 / std::sqrt(2.0);
  Matrix g1(1, 4), g2(1, 4);
  g1 << 0, -s, s, 0;       // (c - b)/sqrt2
  g2 << 2 * s, -s, -s, 0;  // (2a - b - c)/sqrt2
  return scalar_boundary_triplet(std::move(inst), g1, g2);
}

BoundaryTriplet fixture_simple_p2() {
  PontryaginSpace space = PontryaginSpace::diagonal(1, 1);
  Matrix dom(2, 1), img(2, 1);
  dom << 1, 0;
  img << std::sqrt(2.0), 1;
  IsometryInstance inst(
      space, LinearRelation::graph_on_domain(space, space, dom, img),
      "simple-p2");
  return construct_triplet(inst, 0);
}

std::vector<std::string> fixture_names() {
  return {"shift2", "neutral2", "simple-p2"};
}

BoundaryTriplet fixture_by_name(const std::string& name) {
  if (name == "shift2") return fixture_shift2();
  if (name == "neutral2") return fixture_neutral2();
  if (name == "simple-p2") return fixture_simple_p2();
  throw std::invalid_argument("unknown fixture: " + name);
}

IsometryInstance random_instance(int dim, int kappa, int dom_dim,
                                 bool degenerate, unsigned seed) {
  if (dom_dim < 0 || dom_dim > dim || kappa < 0 || kappa > dim)
    throw std::invalid_argument("random_instance: bad dimensions");
  if (degenerate && (kappa == 0 || dom_dim == 0 || dom_dim == dim))
    throw std::invalid_argument(
        "random_instance: a degenerate domain needs kappa >= 1 and a proper "
        "domain");
  PontryaginSpace space = PontryaginSpace::diagonal(dim - kappa, kappa);
  std::mt19937 rng(seed * 7919u + 13u);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix w = random_j_unitary(space, seed + 100003u * attempt);
    Matrix d(dim, dom_dim);
    for (int c = 0; c < dom_dim; ++c)
      for (int r = 0; r < dim; ++r) d(r, c) = Complex(dist(rng), dist(rng));
    if (degenerate) {
      // First positive axis plus first negative axis: a neutral direction.
      d.col(0).setZero();
      d(0, 0) = 1.0;
      d(dim - kappa, 0) = 1.0;
      // Make the other columns J-orthogonal to it so the direction stays
      // isotropic inside the domain: [d_c, n] = d_c(0) - d_c(dim - kappa).
      for (int c = 1; c < dom_dim; ++c) d(0, c) = d(dim - kappa, c);
    }
    Subspace domain(dim, d);
    if (domain.dim() != dom_dim) continue;
    if (degenerate && subspace_signature(space, domain).iso == 0) continue;
    LinearRelation v = LinearRelation::graph_on_domain(
        space, space, domain.basis(), Matrix(w * domain.basis()));
    try {
      return IsometryInstance(space, std::move(v),
                              "random-" + std::to_string(seed));
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  throw std::runtime_error("random_instance: generation failed");
}

}  // namespace pk
