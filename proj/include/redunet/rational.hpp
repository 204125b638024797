#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace redunet {

// Exact rational scalar used for every cost, distance and multiplier.
using Rat = mpq_class;

// Accepts integers ("7", "-3"), fractions ("3/2") and decimals ("1.25").
Rat rat_from_string(const std::string& text);

// Canonical form: "p" when the denominator is 1, otherwise "p/q".
std::string rat_to_string(const Rat& value);

double rat_to_double(const Rat& value);

// Smallest integer k with 2^k >= value. Requires value > 0.
long ceil_log2(const Rat& value);

// floor(log2(value)). Requires value >= 1.
int floor_log2(uint64_t value);

}  // namespace redunet
