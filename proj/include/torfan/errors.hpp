#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace torfan {

// Every failure carries a stable machine-readable code ("NonPrimitiveRay",
// "DisconnectedFan", ...) plus a message naming the offending ray/cone/word.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace torfan
