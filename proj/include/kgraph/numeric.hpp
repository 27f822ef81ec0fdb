#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace kgraph {

using Int = mpz_class;
using Rat = mpq_class;

// Parses "p/q" or "p"; validates q != 0. Throws domain_error on garbage.
Rat rat_parse(const std::string& s);

// Lowest terms; "p" when the denominator is 1, "p/q" otherwise.
std::string rat_str(const Rat& r);

// Exact decimal rendering with `digits` digits after the point (truncated
// toward zero). Informational output only.
std::string rat_decimal(const Rat& r, int digits);

double rat_double(const Rat& r);

Rat rat_pow(const Rat& base, long e);

Int int_pow(long base, unsigned long e);

} // namespace kgraph
