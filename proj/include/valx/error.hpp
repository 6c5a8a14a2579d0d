#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace valx {

enum class ErrorKind {
  // value groups
  RankMismatch,
  NonIntegralGammaDivision,
  GammaUnresolved,
  Unsupported,
  // towers
  NotTotallyRamified,
  InconsistentRootValue,
  NonMonic,
  NonzeroValue,
  NonNegativeValue,
  CharZero,
  NotPowerOfCharExponent,
  LevelMismatch,
  DivisionByZero,
  // polynomials
  NonMonicQ,
  NonMonicDivisor,
  ZeroPolynomial,
  // polygons and pairs
  Inseparable,
  DegreeOne,
  NotARoot,
  IncomparableSpecs,
  NotMinimalAsserted,
  NotHenselianContext,
  BrokenMonotonicity,
  NotCoincident,
  // session
  ParseError,
  UseBeforeDecl,
  // anything that should be impossible
  InvariantBreach,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. The kind selects the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace valx
