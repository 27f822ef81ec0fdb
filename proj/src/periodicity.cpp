#include "kgraph/periodicity.hpp"

#include <algorithm>

#include "kgraph/errors.hpp"
#include "kgraph/lattice.hpp"

namespace kgraph {

Elem witness_unitary(GraphPtr g, const PeriodicityWitness& w) {
    std::vector<NormalWord> up = enumerate_level(*g, deg_pos(w.g));
    std::vector<NormalWord> dn = enumerate_level(*g, deg_neg(w.g));
    std::vector<RawTerm> raw;
    for (std::size_t i = 0; i < up.size(); ++i)
        raw.push_back({up[i], dn[static_cast<std::size_t>(w.pairing[i])], Rat(1)});
    return make_elem(std::move(g), raw);
}

bool is_central(GraphPtr g, const Elem& w) {
    for (int c = 0; c < g->k; ++c)
        for (int s = 0; s < g->m[static_cast<std::size_t>(c)]; ++s) {
            NormalWord e = NormalWord::unit(g->k);
            e.blocks[static_cast<std::size_t>(c)].push_back(s);
            Elem se = elem_word(g, e);
            if (!elem_equal(multiply(se, w), multiply(w, se))) return false;
        }
    return true;
}

namespace {

// Backtracking search for a bijection gamma: Lambda^{g+} -> Lambda^{g-}
// making W central.  Centrality forces, for every edge e and every word u,
//   gamma(v) . f = e . gamma(u)   where   e u = v f,  d(v) = g+, d(f) = e_c;
// both directions of this identity propagate assignments exactly, so the
// search is a unit-propagating DFS.  Complete candidates are re-verified
// through the algebra before being reported.
struct WitnessSearch {
    GraphPtr gp;
    const KGraph& g;
    Deg gplus, gminus;
    std::vector<NormalWord> up, dn;
    std::map<NormalWord, int> up_idx, dn_idx;
    std::vector<Edge> edges;
    // fact[e][u] = (v, f): e . up[u] = up[v] . f
    std::vector<std::vector<std::pair<int, Edge>>> fact;
    // rev[e][v] = list of (f, u) with fact[e][u] = (v, f)
    std::vector<std::vector<std::vector<std::pair<Edge, int>>>> rev;

    std::vector<int> gamma;       // up index -> dn index or -1
    std::vector<int> used;        // dn index -> up index or -1
    std::vector<int> trail;

    WitnessSearch(GraphPtr graph, const Deg& cand)
        : gp(std::move(graph)), g(*gp), gplus(deg_pos(cand)), gminus(deg_neg(cand)) {
        up = enumerate_level(g, gplus);
        dn = enumerate_level(g, gminus);
        for (int i = 0; i < static_cast<int>(up.size()); ++i) up_idx.emplace(up[static_cast<std::size_t>(i)], i);
        for (int i = 0; i < static_cast<int>(dn.size()); ++i) dn_idx.emplace(dn[static_cast<std::size_t>(i)], i);
        for (int c = 0; c < g.k; ++c)
            for (int s = 0; s < g.m[static_cast<std::size_t>(c)]; ++s) edges.push_back({c, s});
        fact.assign(edges.size(), {});
        rev.assign(edges.size(), std::vector<std::vector<std::pair<Edge, int>>>(up.size()));
        for (std::size_t e = 0; e < edges.size(); ++e) {
            fact[e].resize(up.size());
            for (int u = 0; u < static_cast<int>(up.size()); ++u) {
                std::vector<Edge> word = to_edges(up[static_cast<std::size_t>(u)]);
                word.insert(word.begin(), edges[e]);
                NormalWord eu = normalize(g, word);
                auto [v, f] = factorize(g, eu, gplus);
                Edge fe = to_edges(f).at(0);
                int vi = up_idx.at(v);
                fact[e][static_cast<std::size_t>(u)] = {vi, fe};
                rev[e][static_cast<std::size_t>(vi)].push_back({fe, u});
            }
        }
        gamma.assign(up.size(), -1);
        used.assign(dn.size(), -1);
    }

    // gamma(v).f = e.gamma(u) with the unknown on either side
    bool propagate(int u0, int w0) {
        std::vector<std::pair<int, int>> queue{{u0, w0}};
        if (!assign(u0, w0)) return false;
        while (!queue.empty()) {
            auto [u, w] = queue.back();
            queue.pop_back();
            for (std::size_t e = 0; e < edges.size(); ++e) {
                // forward: u known; constrain/force v
                {
                    auto [v, f] = fact[e][static_cast<std::size_t>(u)];
                    std::vector<Edge> word = to_edges(dn[static_cast<std::size_t>(w)]);
                    word.insert(word.begin(), edges[e]);
                    NormalWord egu = normalize(g, word);
                    auto [z1, z2] = factorize(g, egu, gminus);
                    Edge tail = to_edges(z2).at(0);
                    if (tail != f) return false;
                    int want = dn_idx.at(z1);
                    if (gamma[static_cast<std::size_t>(v)] == -1) {
                        if (used[static_cast<std::size_t>(want)] != -1) return false;
                        if (!assign(v, want)) return false;
                        queue.push_back({v, want});
                    } else if (gamma[static_cast<std::size_t>(v)] != want)
                        return false;
                }
                // backward: u plays the role of v; constrain/force the u' with e u' = u f
                for (const auto& [f, u2] : rev[e][static_cast<std::size_t>(u)]) {
                    std::vector<Edge> word = to_edges(dn[static_cast<std::size_t>(w)]);
                    word.push_back(f);
                    NormalWord gvf = normalize(g, word);
                    Deg ec = deg_zero(g.k);
                    ec[static_cast<std::size_t>(edges[e].colour)] = 1;
                    auto [head, z] = factorize(g, gvf, ec);
                    Edge head_e = to_edges(head).at(0);
                    if (head_e != edges[e]) return false;
                    int want = dn_idx.at(z);
                    if (gamma[static_cast<std::size_t>(u2)] == -1) {
                        if (used[static_cast<std::size_t>(want)] != -1) return false;
                        if (!assign(u2, want)) return false;
                        queue.push_back({u2, want});
                    } else if (gamma[static_cast<std::size_t>(u2)] != want)
                        return false;
                }
            }
        }
        return true;
    }

    bool assign(int u, int w) {
        if (gamma[static_cast<std::size_t>(u)] != -1) return gamma[static_cast<std::size_t>(u)] == w;
        if (used[static_cast<std::size_t>(w)] != -1) return false;
        gamma[static_cast<std::size_t>(u)] = w;
        used[static_cast<std::size_t>(w)] = u;
        trail.push_back(u);
        return true;
    }

    void rollback(std::size_t mark) {
        while (trail.size() > mark) {
            int u = trail.back();
            trail.pop_back();
            used[static_cast<std::size_t>(gamma[static_cast<std::size_t>(u)])] = -1;
            gamma[static_cast<std::size_t>(u)] = -1;
        }
    }

    // The propagation rules are necessary conditions, so every central
    // bijection survives; complete candidates are confirmed through the
    // algebra before the search stops.
    bool search(const Deg& cand) {
        int u = -1;
        for (int i = 0; i < static_cast<int>(up.size()); ++i)
            if (gamma[static_cast<std::size_t>(i)] == -1) {
                u = i;
                break;
            }
        if (u == -1) {
            PeriodicityWitness wit{cand, gamma, false};
            return is_central(gp, witness_unitary(gp, wit));
        }
        for (int w = 0; w < static_cast<int>(dn.size()); ++w) {
            if (used[static_cast<std::size_t>(w)] != -1) continue;
            std::size_t mark = trail.size();
            if (propagate(u, w) && search(cand)) return true;
            rollback(mark);
        }
        return false;
    }
};

} // namespace

PeriodicityResult check_periodicity(GraphPtr g, int height_bound) {
    if (height_bound < 1) throw domain_error("check_periodicity: height bound must be >= 1");
    PeriodicityResult out;
    out.bound = height_bound;
    PrimeExponentMatrix pe = prime_exponents(g->m);
    auto in_group = [&](const Deg& cand) {
        for (const auto& row : pe.expo) {
            long s = 0;
            for (std::size_t i = 0; i < cand.size(); ++i) s += row[i] * cand[i];
            if (s != 0) return false;
        }
        return true;
    };

    // candidates ordered by |g|_inf then lex; only first-nonzero-positive
    std::vector<Deg> candidates;
    Deg cur(static_cast<std::size_t>(g->k), -height_bound);
    while (true) {
        if (!deg_is_zero(cur)) {
            bool lead_pos = false;
            for (int x : cur) {
                if (x != 0) {
                    lead_pos = x > 0;
                    break;
                }
            }
            if (lead_pos && in_group(cur)) candidates.push_back(cur);
        }
        int i = g->k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == height_bound) {
            cur[static_cast<std::size_t>(i)] = -height_bound;
            --i;
        }
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
    }
    std::sort(candidates.begin(), candidates.end(), [](const Deg& a, const Deg& b) {
        int la = deg_linf(a), lb = deg_linf(b);
        if (la != lb) return la < lb;
        return a < b;
    });

    for (const Deg& cand : candidates) {
        WitnessSearch ws(g, cand);
        if (ws.search(cand)) {
            out.periodic = true;
            out.witness = PeriodicityWitness{cand, ws.gamma, true};
            return out;
        }
    }
    return out;
}

} // namespace kgraph
