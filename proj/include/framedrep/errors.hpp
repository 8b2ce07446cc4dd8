#pragma once

#include <stdexcept>
#include <string>

namespace framedrep {

// Raised when inputs are well-formed but mathematically inadmissible
// (index out of range, degenerate weights, vanishing denominators, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace framedrep
