#pragma once

#include <compare>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "kgraph/kgraph.hpp"

namespace kgraph {

// Colour-ordered canonical word in F_theta^+: blocks[c] lists the colour-c
// edge indices in order. Two words are equal in the semigroup iff their
// NormalWords are identical.
struct NormalWord {
    std::vector<std::vector<int>> blocks;

    auto operator<=>(const NormalWord&) const = default;

    bool empty() const;
    Deg degree() const;
    int length() const;
    static NormalWord unit(int k) { return NormalWord{std::vector<std::vector<int>>(static_cast<std::size_t>(k))}; }
};

std::vector<Edge> to_edges(const NormalWord& w);
NormalWord from_sorted_edges(int k, const std::vector<Edge>& edges);

// Rewrites an arbitrary edge sequence into ascending colour order, applying
// theta^{-1} at each descent. The result is independent of the swap order
// once the graph is validated.
NormalWord normalize(const KGraph& g, std::vector<Edge> w);

// Same rewriting but resolving each step at a uniformly random descent;
// used to exercise confluence.
NormalWord normalize_random(const KGraph& g, std::vector<Edge> w, std::mt19937& rng);

NormalWord concat(const KGraph& g, const NormalWord& a, const NormalWord& b);

// Unique factorization w = mu nu with d(mu) = p. Throws domain_error unless
// 0 <= p <= d(w).
std::pair<NormalWord, NormalWord> factorize(const KGraph& g, const NormalWord& w, const Deg& p);

// All words of degree p, lexicographic on blocks. Size m^p exactly.
std::vector<NormalWord> enumerate_level(const KGraph& g, const Deg& p);

// Lambda^min(mu,nu) by the defining enumeration: xi runs over
// Lambda^{(d(mu) v d(nu)) - d(mu)} and nu must be the degree-d(nu) prefix of
// normalize(mu xi). Pairs are returned sorted.
std::vector<std::pair<NormalWord, NormalWord>>
lambda_min(const KGraph& g, const NormalWord& mu, const NormalWord& nu);

// Prefix-stripping recursion for the same set; used by multiply and the
// alignment scans. Agrees with lambda_min (property-tested).
std::vector<std::pair<NormalWord, NormalWord>>
lambda_min_fast(const KGraph& g, const NormalWord& mu, const NormalWord& nu);

// |Lambda^min(mu,nu)| computed with early exit at `cap`.
int lambda_min_count(const KGraph& g, const NormalWord& mu, const NormalWord& nu, int cap);

struct LpbReport {
    bool lpb = true;
    std::optional<std::pair<Edge, Edge>> witness;  // an edge pair with >= 2 minimal extensions
};
LpbReport check_little_pullback(const KGraph& g);

struct AlignReport {
    bool singly_aligned = true;
    std::optional<std::pair<NormalWord, NormalWord>> witness;
};
AlignReport check_singly_aligned(const KGraph& g, const Deg& maxdeg);

// Moves the first colour-c edge of w to the front, rewriting along the way;
// returns the extracted edge and the remainder.
std::pair<Edge, std::vector<Edge>> pull_front_colour(const KGraph& g, std::vector<Edge> w, int colour);

} // namespace kgraph
