#pragma once

#include <iosfwd>
#include <string>

#include "heegner/kernel.hpp"
#include "heegner/modular.hpp"

namespace heegner::cli {

enum ExitCode { exit_ok = 0, exit_failure = 1, exit_usage = 2 };

// Parses "heegner:a,b,c" or "complex:x,y".
TauPoint parse_tau_spec(const std::string& spec);

// Decimal string with `digits` significant digits; fixed notation unless the
// exponent is far from zero.
std::string format_decimal(const Real& x, long digits);
std::string format_decimal(const Complex& z, long digits);

// "3.1415926535 8979323846 ..." with the decimals in blocks of 10.
std::string group_digits(const std::string& pi);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace heegner::cli
