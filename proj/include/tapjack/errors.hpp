#pragma once

#include <stdexcept>
#include <string>

namespace tapjack {

// Malformed input: a scenario, event or argument that breaks a model invariant.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tapjack
