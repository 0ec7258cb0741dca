#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace decisive {

enum class ErrorKind {
  UnknownState,
  UnresolvableSet,
  UnboundedFormula,
  ZeroMass,
  ResourceExhausted,
  AlphabetMismatch,
  CertificateRequired,
  InvalidModel,
  InvalidArgument,
  DeadlockedConfiguration,
  Refused,
  Parse,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so that front-ends can
// map it to an exit code or a structured diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace decisive
