#pragma once

#include <stdexcept>
#include <string>

namespace wavebox {

// All recoverable failures surface as Error; the CLI maps them to a
// machine-readable JSON payload on stderr.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

private:
  std::string code_;
};

inline void require(bool cond, const std::string& code, const std::string& message) {
  if (!cond) throw Error(code, message);
}

}  // namespace wavebox
