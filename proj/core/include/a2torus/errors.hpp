#pragma once

#include <stdexcept>
#include <string>

namespace a2t {

// Domain failure carrying a stable machine-readable code.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace a2t
