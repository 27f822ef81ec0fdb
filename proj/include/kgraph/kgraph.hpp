#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kgraph/degree.hpp"

namespace kgraph {

// Edge of colour `colour` (0-based internally; 1-based at the JSON boundary).
struct Edge {
    int colour = 0;
    int index = 0;
    auto operator<=>(const Edge&) const = default;
};

// One commutation permutation theta_{ij} on pairs (s,t) in m_i x m_j, stored
// flat as s*m_j + t together with its inverse.
struct PairPerm {
    std::vector<int> fwd;
    std::vector<int> inv;
};

struct CubicViolation {
    int i, j, l;     // colours, 0-based
    int t1, t2, t3;  // edge indices, 0-based
};

struct KGraph {
    int k = 0;
    std::vector<int> m;
    std::vector<PairPerm> theta;  // indexed by pair_index(i,j), i<j, lex order

    int pair_index(int i, int j) const;  // requires i < j
    const PairPerm& perm(int i, int j) const;
    int edge_count() const;
    bool same_data(const KGraph& other) const;
};

using GraphPtr = std::shared_ptr<const KGraph>;

struct ValidationReport {
    bool structural_ok = true;
    std::string structural_error;
    std::vector<CubicViolation> violations;
    bool valid() const { return structural_ok && violations.empty(); }
};

// theta_flat: one flat permutation array per colour pair (i,j), i<j, in lex
// order over pairs. Checks bijectivity first (structural), then the cubic
// condition on every colour triple and edge triple.
ValidationReport validate_kgraph(int k, const std::vector<int>& m,
                                 const std::vector<std::vector<int>>& theta_flat);

// Builds a validated graph; throws domain_error carrying the first few
// violations otherwise.
GraphPtr make_kgraph(int k, const std::vector<int>& m,
                     const std::vector<std::vector<int>>& theta_flat);

// Transports the graph along edge relabelings (one permutation of 0..m_i-1
// per colour) and a colour permutation `colour_perm` (new colour of old
// colour i is colour_perm[i]; only colours of equal multiplicity may move).
GraphPtr relabel_kgraph(const KGraph& g, const std::vector<int>& colour_perm,
                        const std::vector<std::vector<int>>& edge_perms);

// Deterministic serialization "k|m1,..,mk|perm|perm|..." of the defining data.
std::string serialize_kgraph(const KGraph& g);

// Minimum of serialize_kgraph over the relabeling group: two graphs are
// isomorphic iff their canonical forms coincide.
std::string canonical_iso_form(const KGraph& g);

} // namespace kgraph
