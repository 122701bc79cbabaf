#include "rsconn/errors.hpp"

namespace rsconn {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Structural: return "StructuralError";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::BadResidueFactorization: return "BadResidueFactorization";
    case ErrorKind::UnsupportedSpectrum: return "UnsupportedSpectrum";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::SingularResidue: return "SingularResidue";
    case ErrorKind::ResonantExponents: return "ResonantExponents";
    case ErrorKind::NotLogarithmic: return "NotLogarithmic";
    case ErrorKind::ShearBrokeLogarithmicity: return "ShearBrokeLogarithmicity";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NotRecognized: return "NotRecognized";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::CertificateRejected: return "CertificateRejected";
  }
  return "UnknownError";
}

}  // namespace rsconn
