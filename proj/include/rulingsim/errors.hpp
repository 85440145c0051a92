#pragma once

#include <stdexcept>
#include <string>

namespace rulingsim {

// Raised for any caller-supplied value outside an operation's domain:
// malformed files, out-of-range ids, bad generator or algorithm parameters.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rulingsim
