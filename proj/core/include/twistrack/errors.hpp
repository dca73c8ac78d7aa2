#ifndef TWISTRACK_ERRORS_HPP
#define TWISTRACK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twr {

// Error taxonomy shared by all modules. Each value corresponds to a named
// failure mode of some public operation.
enum class Errc {
  NotPrime,
  EvenCharacteristic,
  Reducible,
  ZeroElement,
  Overflow,
  FactorTooLarge,
  Singular,
  UnsupportedKind,
  Budget,
  NotInvolution,
  InvalidSignature,
  ScaleTooLarge,
  InvalidDescriptor,
  PreconditionViolated,
  CertificationFailed,
  HEven,
  OrderNotCoprime,
  InternalInconsistency,
  Usage,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::Reducible: return "Reducible";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::Overflow: return "Overflow";
    case Errc::FactorTooLarge: return "FactorTooLarge";
    case Errc::Singular: return "Singular";
    case Errc::UnsupportedKind: return "UnsupportedKind";
    case Errc::Budget: return "Budget";
    case Errc::NotInvolution: return "NotInvolution";
    case Errc::InvalidSignature: return "InvalidSignature";
    case Errc::ScaleTooLarge: return "ScaleTooLarge";
    case Errc::InvalidDescriptor: return "InvalidDescriptor";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::CertificationFailed: return "CertificationFailed";
    case Errc::HEven: return "HEven";
    case Errc::OrderNotCoprime: return "OrderNotCoprime";
    case Errc::InternalInconsistency: return "InternalInconsistency";
    case Errc::Usage: return "Usage";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace twr

#endif
