#pragma once

#include <string>
#include <vector>

#include "pk/relation.hpp"

namespace pk {

/// An isometric operator V in a Pontryagin space.
struct IsometryInstance {
  PontryaginSpace space;
  LinearRelation v;
  std::string label;

  IsometryInstance(PontryaginSpace s, LinearRelation rel, std::string lbl);
};

/// The boundary maps Gamma = (Gamma_1, Gamma_2) : V^{-[*]} -> N1 (+) N2,
/// stored as matrices acting on the orthonormal graph coordinates of Vstar.
class BoundaryTriplet {
 public:
  BoundaryTriplet(IsometryInstance inst, LinearRelation vstar,
                  PontryaginSpace n1, PontryaginSpace n2, Matrix g1, Matrix g2,
                  int kappa1);

  const IsometryInstance& inst() const { return inst_; }
  const LinearRelation& vstar() const { return vstar_; }
  const PontryaginSpace& n1() const { return n1_; }
  const PontryaginSpace& n2() const { return n2_; }
  const PontryaginSpace& boundary_space(int j) const {
    return j == 1 ? n1_ : n2_;
  }
  const Matrix& g1() const { return g1_; }
  const Matrix& g2() const { return g2_; }
  const Matrix& g(int j) const { return j == 1 ? g1_ : g2_; }
  int kappa1() const { return kappa1_; }

  /// Apply Gamma_j to product-space pair columns (must lie in Vstar).
  Matrix apply(int j, const Matrix& pairs) const;

 private:
  IsometryInstance inst_;
  LinearRelation vstar_;
  PontryaginSpace n1_, n2_;
  Matrix g1_, g2_;
  int kappa1_;
};

struct TripletReport {
  double green_residual = 0.0;
  double surjectivity_min_sv = 0.0;
  bool surjective = false;
  double kernel_distance = 0.0;  // ker Gamma vs graph of V
  bool pass = false;
};

struct ExceptionalSets {
  std::vector<Complex> lambda1;  // sigma(V1) in |z| > 1
  std::vector<Complex> lambda2;  // sigma(V2) in |z| < 1
};

struct CorrespondenceReport {
  bool nesting = false;        // tau' subset tau  =>  V_tau' subset V_tau
  bool adjoint_law = false;    // V_{tau^{-[*]}} = (V_tau)^{-[*]}
  bool unitary = false;
  bool isometric = false;
  bool coisometric = false;
  bool contractive = false;
  bool expansive = false;
  bool all() const {
    return nesting && adjoint_law && unitary && isometric && coisometric &&
           contractive && expansive;
  }
};

/// V^{-[*]} = adjoint of the inverse; the ambient relation of the triplet.
LinearRelation vstar(const IsometryInstance& inst);

/// Hermitian matrix of the form [f',g'] - [f,g] on the orthonormal graph
/// coordinates of Vstar.
Matrix boundary_form(const IsometryInstance& inst,
                     const LinearRelation& vstar_rel);

BoundaryTriplet construct_triplet(const IsometryInstance& inst, int kappa1);

TripletReport verify_triplet(const BoundaryTriplet& triplet);

/// V_tau = {fhat in Vstar : (Gamma_2 fhat, Gamma_1 fhat) in tau}.
LinearRelation extension(const BoundaryTriplet& triplet,
                         const LinearRelation& tau);

/// (V1, V2) = (ker Gamma_1, ker Gamma_2) inside Vstar.
std::pair<LinearRelation, LinearRelation> kernel_extensions(
    const BoundaryTriplet& triplet);

ExceptionalSets exceptional_sets(const BoundaryTriplet& triplet);

CorrespondenceReport classify_extension_correspondence(
    const BoundaryTriplet& triplet, const LinearRelation& tau, unsigned seed);

}  // namespace pk
