#include "kgraph/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "kgraph/errors.hpp"

namespace kgraph {

PrimeExponentMatrix prime_exponents(const std::vector<int>& m) {
    PrimeExponentMatrix pe;
    for (int mi : m) {
        int v = mi;
        for (long p = 2; p * p <= v; ++p)
            while (v % p == 0) {
                if (std::find(pe.primes.begin(), pe.primes.end(), p) == pe.primes.end()) pe.primes.push_back(p);
                v = static_cast<int>(v / p);
            }
        if (v > 1 && std::find(pe.primes.begin(), pe.primes.end(), v) == pe.primes.end()) pe.primes.push_back(v);
    }
    std::sort(pe.primes.begin(), pe.primes.end());
    pe.expo.assign(pe.primes.size(), std::vector<long>(m.size(), 0));
    for (std::size_t i = 0; i < m.size(); ++i) {
        int v = m[i];
        for (std::size_t pi = 0; pi < pe.primes.size(); ++pi)
            while (v % pe.primes[pi] == 0) {
                ++pe.expo[pi][i];
                v = static_cast<int>(v / pe.primes[pi]);
            }
    }
    return pe;
}

namespace {

// In-place Smith normal form; also accumulates the right transform V so the
// kernel of the input can be read off the zero columns of the diagonal form.
struct SnfState {
    std::vector<std::vector<long>> a;  // rows x cols
    std::vector<std::vector<long>> v;  // cols x cols, input * v column ops applied
    std::size_t rows, cols;

    SnfState(std::vector<std::vector<long>> m, std::size_t ncols) : a(std::move(m)), rows(a.size()), cols(ncols) {
        if (a.empty()) a.push_back(std::vector<long>(ncols, 0));
        rows = a.size();
        v.assign(cols, std::vector<long>(cols, 0));
        for (std::size_t i = 0; i < cols; ++i) v[i][i] = 1;
    }

    void swap_rows(std::size_t r1, std::size_t r2) { std::swap(a[r1], a[r2]); }
    void swap_cols(std::size_t c1, std::size_t c2) {
        for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][c1], a[r][c2]);
        std::swap(v[c1], v[c2]);
    }
    void add_row(std::size_t dst, std::size_t src, long f) {
        for (std::size_t c = 0; c < cols; ++c) a[dst][c] += f * a[src][c];
    }
    void add_col(std::size_t dst, std::size_t src, long f) {
        for (std::size_t r = 0; r < rows; ++r) a[r][dst] += f * a[r][src];
        for (std::size_t r = 0; r < cols; ++r) v[dst][r] += f * v[src][r];
    }
    void negate_col(std::size_t c) {
        for (std::size_t r = 0; r < rows; ++r) a[r][c] = -a[r][c];
        for (std::size_t r = 0; r < cols; ++r) v[c][r] = -v[c][r];
    }

    void reduce() {
        std::size_t t = 0;
        while (t < rows && t < cols) {
            // find pivot: nonzero entry of minimal |value| in the submatrix
            std::size_t pr = t, pc = t;
            long best = 0;
            for (std::size_t r = t; r < rows; ++r)
                for (std::size_t c = t; c < cols; ++c)
                    if (a[r][c] != 0 && (best == 0 || std::labs(a[r][c]) < best)) {
                        best = std::labs(a[r][c]);
                        pr = r;
                        pc = c;
                    }
            if (best == 0) break;
            swap_rows(t, pr);
            swap_cols(t, pc);
            bool clean = true;
            for (std::size_t r = t + 1; r < rows; ++r)
                if (a[r][t] != 0) {
                    add_row(r, t, -(a[r][t] / a[t][t]));
                    if (a[r][t] != 0) clean = false;
                }
            for (std::size_t c = t + 1; c < cols; ++c)
                if (a[t][c] != 0) {
                    add_col(c, t, -(a[t][c] / a[t][t]));
                    if (a[t][c] != 0) clean = false;
                }
            if (!clean) continue;  // remainders left; pick a smaller pivot next pass
            ++t;
        }
    }
};

} // namespace

SnfResult smith_normal_form(std::vector<std::vector<long>> a) {
    std::size_t cols = a.empty() ? 0 : a[0].size();
    SnfState st(std::move(a), cols);
    st.reduce();
    SnfResult out;
    for (std::size_t t = 0; t < std::min(st.rows, st.cols); ++t) {
        out.diag.push_back(std::labs(st.a[t][t]));
        if (st.a[t][t] != 0) ++out.rank;
    }
    return out;
}

std::vector<Deg> integer_kernel_basis(std::vector<std::vector<long>> a, int ncols) {
    SnfState st(std::move(a), static_cast<std::size_t>(ncols));
    st.reduce();
    int rank = 0;
    for (std::size_t t = 0; t < std::min(st.rows, st.cols); ++t)
        if (st.a[t][t] != 0) ++rank;
    std::vector<Deg> basis;
    for (std::size_t c = static_cast<std::size_t>(rank); c < st.cols; ++c) {
        Deg g(static_cast<std::size_t>(ncols));
        for (int i = 0; i < ncols; ++i) g[static_cast<std::size_t>(i)] = static_cast<int>(st.v[c][static_cast<std::size_t>(i)]);
        // sign convention: first nonzero coordinate positive
        for (int x : g) {
            if (x > 0) break;
            if (x < 0) {
                for (auto& y : g) y = -y;
                break;
            }
        }
        basis.push_back(std::move(g));
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

IntrinsicGroup intrinsic_group(const std::vector<int>& m) {
    for (int mi : m)
        if (mi < 2) throw domain_error("intrinsic_group: every m_i must be >= 2");
    PrimeExponentMatrix pe = prime_exponents(m);
    IntrinsicGroup g;
    g.basis = integer_kernel_basis(pe.expo, static_cast<int>(m.size()));
    g.rank = static_cast<int>(g.basis.size());
    for (const Deg& b : g.basis)
        if (!verify_m_pow_identity(m, b)) throw domain_error("intrinsic_group: basis vector failed m^g = 1 (internal)");
    return g;
}

bool in_intrinsic_group(const std::vector<int>& m, const Deg& g) {
    if (g.size() != m.size()) return false;
    PrimeExponentMatrix pe = prime_exponents(m);
    for (const auto& row : pe.expo) {
        long s = 0;
        for (std::size_t i = 0; i < m.size(); ++i) s += row[i] * g[i];
        if (s != 0) return false;
    }
    return true;
}

bool verify_m_pow_identity(const std::vector<int>& m, const Deg& g) {
    Int plus(1), minus(1);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (g[i] > 0) plus *= int_pow(m[i], static_cast<unsigned long>(g[i]));
        if (g[i] < 0) minus *= int_pow(m[i], static_cast<unsigned long>(-g[i]));
    }
    return plus == minus;
}

SpectrumResult spectrum_generator(const std::vector<int>& m) {
    for (int mi : m)
        if (mi < 2) throw domain_error("spectrum_generator: every m_i must be >= 2");
    int k = static_cast<int>(m.size());
    IntrinsicGroup g = intrinsic_group(m);
    SpectrumResult out;
    if (g.rank < k - 1) return out;  // dense
    // rank k-1: all exponent vectors are parallel, so every m_i is a power of
    // a common base c = prod p^{w_p} with w primitive.
    PrimeExponentMatrix pe = prime_exponents(m);
    std::vector<long> w(pe.primes.size());
    for (std::size_t pi = 0; pi < pe.primes.size(); ++pi) w[pi] = pe.expo[pi][0];
    long content = 0;
    for (long x : w) content = std::gcd(content, x);
    for (auto& x : w) x /= content;
    long c = 1;
    for (std::size_t pi = 0; pi < pe.primes.size(); ++pi)
        for (long e = 0; e < w[pi]; ++e) c *= pe.primes[pi];
    long gen = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        // d_i with m_i = c^{d_i}
        long d = 0;
        long v = m[i];
        while (v > 1) {
            if (v % c != 0) throw domain_error("spectrum_generator: internal base mismatch");
            v /= c;
            ++d;
        }
        gen = std::gcd(gen, d);
    }
    out.dense = false;
    out.base = c;
    out.gen = gen;
    return out;
}

} // namespace kgraph
