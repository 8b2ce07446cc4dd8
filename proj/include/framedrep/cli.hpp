#pragma once
// Command-line front end. Exit codes: 0 success, 1 domain error (or a failing
// selftest), 2 usage error.

#include <iosfwd>
#include <string>

#include "framedrep/scalar.hpp"

namespace framedrep::cli {

// "p/q", decimal or scientific; throws std::invalid_argument.
Rational parse_rational(const std::string& text);
// "a", "bi", "a+bi", "a-bi" with each part in parse_rational syntax; "i"
// alone is the imaginary unit.
Complex parse_complex(const std::string& text);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace framedrep::cli
