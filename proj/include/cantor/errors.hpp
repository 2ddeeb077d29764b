#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cantor {

// Domain error with a stable machine-readable name ("MalformedBlock",
// "ValueOutOfRange", ...). The CLI prints the name verbatim.
class DomainError : public std::runtime_error {
public:
  DomainError(std::string name, const std::string& message)
      : std::runtime_error(message), name_(std::move(name)) {}

  const std::string& name() const { return name_; }

private:
  std::string name_;
};

[[noreturn]] inline void fail(std::string name, const std::string& message) {
  throw DomainError(std::move(name), message);
}

}  // namespace cantor
