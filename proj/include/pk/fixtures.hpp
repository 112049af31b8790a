#pragma once

#include <string>
#include <vector>

#include "pk/io.hpp"

namespace pk {

/// Shift-by-one on C^2 (Hilbert): V e1 = e2, boundary data Gamma_1 = f'_1,
/// Gamma_2 = f_2; Weyl functions 1/lambda^2 and lambda^2.
BoundaryTriplet fixture_shift2();

/// Non-simple instance on the signature (1,1) plane: V fixes the neutral
/// vector (1,1); both Weyl functions are constant -1.
BoundaryTriplet fixture_neutral2();

/// Simple instance on the signature (1,1) plane with V e1 = (sqrt2, 1);
/// one negative square in the Weyl kernel.
BoundaryTriplet fixture_simple_p2();

std::vector<std::string> fixture_names();
BoundaryTriplet fixture_by_name(const std::string& name);

/// Restriction of a random J-unitary to a random dom_dim-dimensional
/// subspace; when `degenerate` the domain carries a neutral vector.
IsometryInstance random_instance(int dim, int kappa, int dom_dim,
                                 bool degenerate, unsigned seed);

}  // namespace pk
