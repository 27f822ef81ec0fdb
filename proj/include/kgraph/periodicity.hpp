#pragma once

#include <optional>

#include "kgraph/algebra.hpp"

namespace kgraph {

struct PeriodicityWitness {
    Deg g;                      // candidate period, m^g = 1, g != 0
    std::vector<int> pairing;   // Lambda^{g+}[i] |-> Lambda^{g-}[pairing[i]]
    bool verified = false;      // W = sum s_u s_{gamma(u)}* commutes with every generator
};

struct PeriodicityResult {
    bool periodic = false;
    std::optional<PeriodicityWitness> witness;
    int bound = 0;  // meaningful when aperiodic-up-to-bound
};

// W = sum_{u in Lambda^{g+}} s_u s_{gamma(u)}* for the witness pairing.
Elem witness_unitary(GraphPtr g, const PeriodicityWitness& w);

// Exact centrality test s_e W == W s_e for every generator.
bool is_central(GraphPtr g, const Elem& w);

// Searches nonzero g in the intrinsic group with |g|_inf <= height_bound
// (first nonzero coordinate positive; witnesses for -g mirror those for g),
// backtracking over partial bijections with exact pruning; every reported
// witness is re-verified through the algebra.
PeriodicityResult check_periodicity(GraphPtr g, int height_bound);

} // namespace kgraph
