#pragma once

#include <vector>

#include "kgraph/degree.hpp"

namespace kgraph {

// Exponent matrix of m over the primes dividing any m_i: m_i = prod_p p^{expo[p][i]}.
struct PrimeExponentMatrix {
    std::vector<long> primes;
    std::vector<std::vector<long>> expo;  // expo[pi][i]
};

PrimeExponentMatrix prime_exponents(const std::vector<int>& m);

struct IntrinsicGroup {
    int rank = 0;
    std::vector<Deg> basis;  // lattice basis of {g : m^g = 1}, sign-normalized
};

// Kernel of the prime-exponent matrix over Z via Smith normal form.
// Requires every m_i >= 2.
IntrinsicGroup intrinsic_group(const std::vector<int>& m);

// Exact membership test m^g = 1 through the exponent matrix.
bool in_intrinsic_group(const std::vector<int>& m, const Deg& g);

// Independent check by direct arbitrary-precision evaluation m^{g_+} == m^{g_-}.
bool verify_m_pow_identity(const std::vector<int>& m, const Deg& g);

struct SpectrumResult {
    bool dense = true;  // closure of {m^n} is [0,inf)
    long base = 0;      // otherwise the positive part is {base^(gen*N) : N in Z}
    long gen = 0;
};

// Dense when rank G < k-1; otherwise the cyclic generator of cl{m^n}.
SpectrumResult spectrum_generator(const std::vector<int>& m);

// Smith normal form diagnostics (diagonal entries and rank) of an integer
// matrix; used to validate rank-nullity.
struct SnfResult {
    std::vector<long> diag;
    int rank = 0;
};
SnfResult smith_normal_form(std::vector<std::vector<long>> a);

// Basis of {x in Z^n : a x = 0}.
std::vector<Deg> integer_kernel_basis(std::vector<std::vector<long>> a, int ncols);

} // namespace kgraph
