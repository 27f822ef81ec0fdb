#pragma once

#include <vector>

#include "kgraph/numeric.hpp"

namespace kgraph {

// Degree vectors. Deg is used both for N^k degrees and Z^k degrees; the
// nonneg helpers make the intent explicit at use sites.
using Deg = std::vector<int>;

inline Deg deg_zero(int k) { return Deg(static_cast<std::size_t>(k), 0); }

bool deg_nonneg(const Deg& a);
bool deg_is_zero(const Deg& a);
bool deg_le(const Deg& a, const Deg& b);           // coordinate-wise a <= b
Deg deg_add(const Deg& a, const Deg& b);
Deg deg_sub(const Deg& a, const Deg& b);
Deg deg_join(const Deg& a, const Deg& b);          // coordinate-wise max
Deg deg_meet(const Deg& a, const Deg& b);          // coordinate-wise min
Deg deg_pos(const Deg& a);                         // a_+ = a v 0
Deg deg_neg(const Deg& a);                         // a_- = (-a) v 0
Deg deg_negate(const Deg& a);
int deg_total(const Deg& a);                       // sum of entries
int deg_linf(const Deg& a);                        // max |a_i|
Deg deg_scale(const Deg& a, int t);

// m^p as an exact rational; p may have negative entries.
Rat m_pow(const std::vector<int>& m, const Deg& p);

// m^p for p >= 0 as an arbitrary-precision integer.
Int m_pow_int(const std::vector<int>& m, const Deg& p);

// m^p as a long, throwing resource_error past `cap`. p >= 0.
long m_pow_long(const std::vector<int>& m, const Deg& p, long cap);

} // namespace kgraph
