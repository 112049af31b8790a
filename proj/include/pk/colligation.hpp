#pragma once

#include <array>

#include "pk/resolvent.hpp"

namespace pk {

/// Block-partitioned unitary U = [T F; G H] : state (+) input -> state (+)
/// output, all spaces Pontryagin, adjoints indefinite.
struct UnitaryColligation {
  PontryaginSpace state;
  PontryaginSpace input;
  PontryaginSpace output;
  Matrix t;  // state -> state
  Matrix f;  // input -> state
  Matrix g;  // state -> output
  Matrix h;  // input -> output

  UnitaryColligation(PontryaginSpace state_, PontryaginSpace input_,
                     PontryaginSpace output_, Matrix t_, Matrix f_, Matrix g_,
                     Matrix h_);

  Matrix connecting() const;  // assembled U
};

struct ColligationReport {
  std::array<double, 6> residuals{};  // the six block identities
  double max_residual = 0.0;
  bool pass = false;
};

ColligationReport verify_colligation(const UnitaryColligation& d);

/// Theta(lambda) = H + lambda G (I - lambda T)^{-1} F.
Matrix char_function(const UnitaryColligation& d, Complex lambda);
/// The same function through the projected form
/// P_{N1} (I - lambda U P_state)^{-1} U |_{N2}; cross-check oracle.
Matrix char_function_projected(const UnitaryColligation& d, Complex lambda);

/// No nonzero subspace of the state space is invariant under T and T^{[*]}
/// while lying inside ker G and ker F^{[*]}.
bool is_simple_colligation(const UnitaryColligation& d);

/// Exit space Htilde = Hperp [+] H, Hperp carried first in coordinates.
struct ExitSpace {
  PontryaginSpace hperp;
  PontryaginSpace inner;   // the original space H
  PontryaginSpace htilde;  // block-diagonal Gram diag(Jperp, JH)

  ExitSpace(PontryaginSpace hperp_, PontryaginSpace inner_);

  /// Embed a vector/matrix of H-columns into Htilde (bottom block).
  Matrix embed(const Matrix& m) const;
  /// Bottom-block rows of an Htilde matrix.
  Matrix project(const Matrix& m) const;
};

struct LiftedTriplet {
  BoundaryTriplet base;
  ExitSpace exit;
  BoundaryTriplet lifted;  // triplet for V viewed in Htilde
};

/// Boundary triplet for V in Htilde: the adjoint relation gains the full
/// (Hperp)^2 block and the boundary maps become diag(pi_2, Gamma_1) and
/// diag(pi_1, Gamma_2) into Hperp (+) N_j.
LiftedTriplet lift_triplet(const BoundaryTriplet& base,
                           const PontryaginSpace& hperp);

/// Vtilde_tau for tau = graph of the connecting operator of d.
LinearRelation exit_extension(const LiftedTriplet& lifted,
                              const UnitaryColligation& d);

/// Generalized resolvent from the characteristic function:
/// exterior lambda through (V_1, M_1, Theta(1/lambda)), interior through
/// (V_2, M_2, Theta(conj lambda)^{[*]}).
Matrix generalized_resolvent(const BoundaryTriplet& t,
                             const UnitaryColligation& d, Complex lambda);

/// P_H (Vtilde - lambda)^{-1} |_H : bottom-right dim_h block.
Matrix compress(const LinearRelation& vtilde, Complex lambda, int dim_h);

/// P_H (I - lambda Vtilde)^{-1} |_H.
Matrix cocompress(const LinearRelation& vtilde, Complex lambda, int dim_h);

/// Generalized coresolvent from the characteristic function (reflected
/// regions; gamma/M evaluated at 1/lambda).
Matrix coresolvent(const BoundaryTriplet& t, const UnitaryColligation& d,
                   Complex lambda);

struct MinimalDecomposition {
  Subspace hm = Subspace::zero(0);  // span of H and its resolvent orbit
  Subspace hu = Subspace::zero(0);  // ortho-companion reducing part
  bool minimal = false;
};

/// Split Htilde into the minimal part generated by H and a reducing
/// complement; throws NotRegular when the complement is not positive.
MinimalDecomposition minimal_decompose(const LinearRelation& vtilde, int dim_h,
                                       unsigned seed = 0);

/// Compression of the restriction of Vtilde to an invariant subspace.
Matrix compress_restricted(const LinearRelation& vtilde, const Subspace& s,
                           Complex lambda, int dim_h);

/// Seed-deterministic J-unitary matrix (Cayley transform of a random
/// indefinitely skew-symmetric matrix).
Matrix random_j_unitary(const PontryaginSpace& space, unsigned seed);

/// Simple colligation with state = diagonal(state_dim - neg_index,
/// neg_index) and identical input/output spaces.
UnitaryColligation random_simple_colligation(int state_dim, int neg_index,
                                             const PontryaginSpace& n2,
                                             const PontryaginSpace& n1,
                                             unsigned seed);

}  // namespace pk
