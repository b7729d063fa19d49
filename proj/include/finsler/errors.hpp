#ifndef FINSLER_ERRORS_HPP
#define FINSLER_ERRORS_HPP

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace finsler {

/// Domain error categories raised by the library.
enum class Errc {
  InvalidArgument,
  NotHermitian,
  NotUnimodular,
  NonRealEntry,
  IsotropicVelocity,
  InconsistentMomenta,
  SingularMomentumMatrix,
  NotUnitSpeed,
  DegeneratePath,
  NonMonotone,
  BlockLeakage,
  NonTimelike,
};

/// Machine-readable token used as the prefix of CLI error messages.
constexpr std::string_view token(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotUnimodular: return "NotUnimodular";
    case Errc::NonRealEntry: return "NonRealEntry";
    case Errc::IsotropicVelocity: return "IsotropicVelocity";
    case Errc::InconsistentMomenta: return "InconsistentMomenta";
    case Errc::SingularMomentumMatrix: return "SingularMomentumMatrix";
    case Errc::NotUnitSpeed: return "NotUnitSpeed";
    case Errc::DegeneratePath: return "DegeneratePath";
    case Errc::NonMonotone: return "NonMonotone";
    case Errc::BlockLeakage: return "BlockLeakage";
    case Errc::NonTimelike: return "NonTimelike";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

  /// Value attached to the failure (e.g. the offending residual); NaN if none.
  double value() const noexcept { return value_; }

  Error& with_value(double v) noexcept {
    value_ = v;
    return *this;
  }

 private:
  Errc code_;
  double value_ = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace finsler

#endif  // FINSLER_ERRORS_HPP
