#pragma once

#include <optional>

#include "pk/weyl.hpp"

namespace pk {

/// Extension parameter: a linear relation from N2 to N1, optionally also
/// presented as an operator pair tau = {(K2 h, K1 h) : h in H}.
class TauParam {
 public:
  static TauParam from_relation(LinearRelation rel);
  static TauParam from_pair(const PontryaginSpace& n2,
                            const PontryaginSpace& n1, Matrix k1, Matrix k2);

  const LinearRelation& rel() const { return rel_; }
  bool has_pair() const { return k1_.has_value(); }
  const Matrix& k1() const { return *k1_; }
  const Matrix& k2() const { return *k2_; }

 private:
  explicit TauParam(LinearRelation rel) : rel_(std::move(rel)) {}
  LinearRelation rel_;
  std::optional<Matrix> k1_, k2_;
};

enum class PointClass { eigenvalue, regular, undecided };

enum class ResolventForm {
  automatic,  // relation calculus, or the pair form when a pair is given
  relation,   // (tau^{-1} - M_1)^{-1} resp. (tau - M_2)^{-1} via relations
  pair,       // K_1 (K_2 - M_1 K_1)^{-1} resp. K_2 (K_1 - M_2 K_2)^{-1}
  unitary     // U (I - M_1 U)^{-1} for tau the graph of a unitary operator
};

/// Spectral classification of lambda for V_tau through the boundary pencil.
PointClass point_class(const BoundaryTriplet& triplet, const TauParam& tau,
                       Complex lambda);

/// Krein-type resolvent of V_tau: exterior points go through (V_1, M_1),
/// interior points through (V_2, M_2).
Matrix krein_resolvent(const BoundaryTriplet& triplet, const TauParam& tau,
                       Complex lambda,
                       ResolventForm form = ResolventForm::automatic);

/// Residual between the interior-formula resolvent of V_{tau^{-[*]}} and the
/// sharp transform of the exterior formula at the reflected point.
double sharp_consistency(const BoundaryTriplet& triplet, const TauParam& tau,
                         Complex lambda);

}  // namespace pk
