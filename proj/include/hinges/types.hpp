#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace hinges {

using Mat  = Eigen::MatrixXcd;
using Vec  = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using cplx = std::complex<double>;

enum class Field { Real, Complex };

inline const char* field_name(Field f) { return f == Field::Real ? "real" : "complex"; }

// Relative singular-value cutoff for every rank decision.
inline constexpr double kRankTol = 1e-9;
// Default gap tolerance for subspace identities (hinge axioms, fixed-point checks).
inline constexpr double kGapTol = 1e-8;
// A family member counts as singular below this relative floor.  Kept near the
// machine backward-error level, not at kRankTol: members of a scaling family are
// legitimately ill-conditioned once the probe separates the scales.
inline constexpr double kSingularFloor = 1e-13;

// Input that is structurally or numerically outside an operation's domain.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed request independent of the mathematical content (bad JSON shape, bad flags).
class UsageError : public std::runtime_error {
public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct GridSpec {
  double modulus_min = 1e-8;
  double modulus_max = 1e8;
  int moduli = 33;       // log-spaced, endpoints included
  int phases = 16;       // complex field only; real field uses both signs
  bool positive_only = false;  // restrict to positive reals (symmetric-space orbits)
};

}  // namespace hinges
