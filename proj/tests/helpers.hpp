#pragma once

// Shared fixtures and independent oracles for the test suites.  Oracles are
// deliberately written against the definitions (exhaustion, direct sums),
// not against the production code paths they check.

#include <random>

#include "kgraph/averaging.hpp"
#include "kgraph/census.hpp"
#include "kgraph/classify.hpp"
#include "kgraph/config.hpp"
#include "kgraph/errors.hpp"
#include "kgraph/io.hpp"

namespace kgraph::testing {

// --- standard small graphs -------------------------------------------------

inline GraphPtr graph22(const std::vector<int>& perm) { return make_kgraph(2, {2, 2}, {perm}); }

inline GraphPtr graph22_identity() { return graph22({0, 1, 2, 3}); }

// theta(s,t) = (t,s): flat (s,t) -> (t,s): 0->0, 1->2, 2->1, 3->3
inline GraphPtr graph22_flip() { return graph22({0, 2, 1, 3}); }

// the 3-cycle ((1,1),(2,1),(1,2)): (1,1)->(2,1)->(1,2)->(1,1), fixing (2,2)
inline GraphPtr graph22_3cycle() { return graph22({2, 0, 1, 3}); }

inline GraphPtr graph23_identity() {
    std::vector<int> id(6);
    for (int i = 0; i < 6; ++i) id[static_cast<std::size_t>(i)] = i;
    return make_kgraph(2, {2, 3}, {id});
}

inline GraphPtr graph222_identity() {
    std::vector<int> id(4);
    for (int i = 0; i < 4; ++i) id[static_cast<std::size_t>(i)] = i;
    return make_kgraph(3, {2, 2, 2}, {id, id, id});
}

inline GraphPtr graph48_identity() {
    std::vector<int> id(32);
    for (int i = 0; i < 32; ++i) id[static_cast<std::size_t>(i)] = i;
    return make_kgraph(2, {4, 8}, {id});
}

inline NormalWord w_edge(const KGraph& g, int colour, int index) {
    NormalWord w = NormalWord::unit(g.k);
    w.blocks[static_cast<std::size_t>(colour)].push_back(index);
    return w;
}

// --- random data -----------------------------------------------------------

inline NormalWord random_word(const KGraph& g, const Deg& p, std::mt19937& rng) {
    NormalWord w = NormalWord::unit(g.k);
    for (int c = 0; c < g.k; ++c)
        for (int i = 0; i < p[static_cast<std::size_t>(c)]; ++i)
            w.blocks[static_cast<std::size_t>(c)].push_back(
                std::uniform_int_distribution<int>(0, g.m[static_cast<std::size_t>(c)] - 1)(rng));
    return w;
}

inline Deg random_deg(int k, int lo, int hi, std::mt19937& rng) {
    Deg d(static_cast<std::size_t>(k));
    for (auto& x : d) x = std::uniform_int_distribution<int>(lo, hi)(rng);
    return d;
}

inline Rat random_coeff(std::mt19937& rng) {
    int num = std::uniform_int_distribution<int>(-4, 4)(rng);
    int den = std::uniform_int_distribution<int>(1, 4)(rng);
    if (num == 0) num = 1;
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Random homogeneous element of the given degree; extra core padding keeps
// the bidegrees interesting.
inline Elem random_homogeneous(GraphPtr g, const Deg& n, int nterms, std::mt19937& rng, int pad = 1) {
    std::vector<RawTerm> raw;
    for (int t = 0; t < nterms; ++t) {
        Deg extra = random_deg(g->k, 0, pad, rng);
        NormalWord u = random_word(*g, deg_add(deg_pos(n), extra), rng);
        NormalWord v = random_word(*g, deg_add(deg_neg(n), extra), rng);
        raw.push_back({u, v, random_coeff(rng)});
    }
    return make_elem(std::move(g), raw);
}

inline Elem random_core(GraphPtr g, int nterms, std::mt19937& rng, int pad = 1) {
    return random_homogeneous(std::move(g), deg_zero(g->k), nterms, rng, pad);
}

// --- oracles ---------------------------------------------------------------

// omega by its definition: tau(Phi_0(A)) with Phi_0 the diagonal-degree part
// and tau read off term by term.
inline Rat omega_oracle(const Elem& a) {
    Rat s(0);
    for (const auto& [n, comp] : a.comps) {
        if (!deg_is_zero(n)) continue;
        for (const auto& [key, c] : comp.terms)
            if (key.first == key.second) s += c * m_pow(a.graph->m, deg_negate(key.first.degree()));
    }
    return s;
}

// Lambda^min size by raw double enumeration over both extension degrees.
inline int lambda_min_size_oracle(const KGraph& g, const NormalWord& mu, const NormalWord& nu) {
    Deg join = deg_join(mu.degree(), nu.degree());
    int count = 0;
    for (const NormalWord& xi : enumerate_level(g, deg_sub(join, mu.degree())))
        for (const NormalWord& eta : enumerate_level(g, deg_sub(join, nu.degree())))
            if (concat(g, mu, xi) == concat(g, nu, eta)) ++count;
    return count;
}

} // namespace kgraph::testing
