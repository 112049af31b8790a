#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace pk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Global zero-test tolerance. Fixtures are dimension <= 16 with benign
// conditioning, so a single absolute tolerance is enough.
struct Tol {
  static double& value() {
    static double t = 1e-9;
    return t;
  }
};

inline double tol() { return Tol::value(); }

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotInvertible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegeneratePencil : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GammaNotInvertible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PencilSingular : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleKappa1 : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RegionViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularShift : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotRegular : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pk
