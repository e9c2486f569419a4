#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace maslov {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kImag{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Inner products are conjugate-linear in the FIRST slot: <x, y> = x^* y.
/// The symplectic form is omega(x, y) = <Jx, y>.
inline constexpr const char* kInnerProductConvention = "conjugate-linear-first";

enum class ErrorKind {
  NotSkewAdjoint,
  Singular,
  OddDimension,
  NotNormalized,
  NotSymplectic,
  RankDeficient,
  RankAmbiguous,
  SpaceMismatch,
  NotLagrangian,
  NoLagrangians,
  NotComplement,
  DerivativeUnavailable,
  SubdivisionLimit,
  GaugeUnstable,
  DegenerateCrossing,
  NonIsolatedCrossing,
  IdentityMismatch,
  IdentityViolated,
  NotALoop,
  DiscontinuousJunction,
  NotBrakeInvolution,
  BlockIdentityViolated,
  InvalidArgument,
  Config,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSkewAdjoint: return "NotSkewAdjoint";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::OddDimension: return "OddDimension";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotSymplectic: return "NotSymplectic";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::RankAmbiguous: return "RankAmbiguous";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::NotLagrangian: return "NotLagrangian";
    case ErrorKind::NoLagrangians: return "NoLagrangians";
    case ErrorKind::NotComplement: return "NotComplement";
    case ErrorKind::DerivativeUnavailable: return "DerivativeUnavailable";
    case ErrorKind::SubdivisionLimit: return "SubdivisionLimit";
    case ErrorKind::GaugeUnstable: return "GaugeUnstable";
    case ErrorKind::DegenerateCrossing: return "DegenerateCrossing";
    case ErrorKind::NonIsolatedCrossing: return "NonIsolatedCrossing";
    case ErrorKind::IdentityMismatch: return "IdentityMismatch";
    case ErrorKind::IdentityViolated: return "IdentityViolated";
    case ErrorKind::NotALoop: return "NotALoop";
    case ErrorKind::DiscontinuousJunction: return "DiscontinuousJunction";
    case ErrorKind::NotBrakeInvolution: return "NotBrakeInvolution";
    case ErrorKind::BlockIdentityViolated: return "BlockIdentityViolated";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Identity checks that fail are bugs or tolerance failures; everything
  /// else that is not a usage error counts as numerical trouble.
  bool is_identity_violation() const noexcept {
    return kind_ == ErrorKind::IdentityMismatch || kind_ == ErrorKind::IdentityViolated ||
           kind_ == ErrorKind::BlockIdentityViolated;
  }
  bool is_usage() const noexcept {
    return kind_ == ErrorKind::Config || kind_ == ErrorKind::InvalidArgument ||
           kind_ == ErrorKind::OddDimension || kind_ == ErrorKind::SpaceMismatch;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

/// Relative tolerances shared by every computation on a space.
struct Tolerances {
  double structure = 1e-9;   // J* = -J, J^2 = -I, sp membership
  double symplectic = 1e-9;  // M* J M = J
  double lagrangian = 1e-9;  // F* J F = 0
  double rank = 1e-8;        // singular value cutoff relative to sigma_max
  double junction = 1e-9;    // continuity at concatenation points
};

}  // namespace maslov
