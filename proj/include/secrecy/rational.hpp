#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace secrecy {

using Rat = mpq_class;

// Rounds to 12 decimal digits before converting, so that downstream exact
// arithmetic is reproducible and independent of the last float bits.
Rat rat_from_double_12(double x);

double rat_to_double(const Rat& r);

// "p/q" (or "p" when q == 1)
std::string rat_to_string(const Rat& r);

// parses "p", "-p/q", decimal strings like "0.25"
Rat rat_parse(const std::string& s);

}  // namespace secrecy
