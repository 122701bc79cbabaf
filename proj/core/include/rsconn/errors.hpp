#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsconn {

enum class ErrorKind {
  Structural,
  NotAUnit,
  NotCoprime,
  BadResidueFactorization,
  UnsupportedSpectrum,
  PrecisionExhausted,
  SingularResidue,
  ResonantExponents,
  NotLogarithmic,
  ShearBrokeLogarithmicity,
  PreconditionFailed,
  NotRecognized,
  Unsupported,
  ParseError,
  ValidationError,
  IoError,
  CertificateRejected,
};

/// Stable identifier used in reports and exit-code classification.
std::string_view error_name(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind from the taxonomy above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace rsconn
