#pragma once

#include <stdexcept>
#include <string>

namespace arrowcfg {

enum class ErrorKind {
  malformed,       // structurally invalid input (unknown object, duplicate name, ...)
  composition,     // endpoint mismatch when composing paths
  type_mismatch,   // gap type / color mismatch
  index,           // index out of range
  unknown_symbol,  // symbol not declared in the alphabet or grammar
  unsupported,     // construction outside the supported class (e.g. epsilon transitions)
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::malformed: return "malformed";
    case ErrorKind::composition: return "composition";
    case ErrorKind::type_mismatch: return "type mismatch";
    case ErrorKind::index: return "index";
    case ErrorKind::unknown_symbol: return "unknown symbol";
    case ErrorKind::unsupported: return "unsupported";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace arrowcfg
