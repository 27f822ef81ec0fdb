#include "kgraph/kgraph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "kgraph/errors.hpp"

namespace kgraph {

int KGraph::pair_index(int i, int j) const {
    // lex rank of (i,j) with i<j among k colours
    int idx = 0;
    for (int a = 0; a < i; ++a) idx += k - a - 1;
    return idx + (j - i - 1);
}

const PairPerm& KGraph::perm(int i, int j) const { return theta[static_cast<std::size_t>(pair_index(i, j))]; }

int KGraph::edge_count() const { return std::accumulate(m.begin(), m.end(), 0); }

bool KGraph::same_data(const KGraph& other) const {
    if (k != other.k || m != other.m) return false;
    for (std::size_t t = 0; t < theta.size(); ++t)
        if (theta[t].fwd != other.theta[t].fwd) return false;
    return true;
}

namespace {

bool is_permutation(const std::vector<int>& p, int n) {
    if (static_cast<int>(p.size()) != n) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : p) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

// Applies theta_{ij} to (s,t), i<j: e^i_s e^j_t = e^j_{t'} e^i_{s'}.
std::pair<int, int> apply_fwd(const KGraph& g, int i, int j, int s, int t) {
    int mj = g.m[static_cast<std::size_t>(j)];
    int out = g.perm(i, j).fwd[static_cast<std::size_t>(s * mj + t)];
    return {out / mj, out % mj};
}

} // namespace

ValidationReport validate_kgraph(int k, const std::vector<int>& m,
                                 const std::vector<std::vector<int>>& theta_flat) {
    ValidationReport rep;
    if (k < 1) {
        rep.structural_ok = false;
        rep.structural_error = "k must be >= 1";
        return rep;
    }
    if (static_cast<int>(m.size()) != k) {
        rep.structural_ok = false;
        rep.structural_error = "m must have length k";
        return rep;
    }
    for (int mi : m)
        if (mi < 1) {
            rep.structural_ok = false;
            rep.structural_error = "every m_i must be >= 1";
            return rep;
        }
    std::size_t npairs = static_cast<std::size_t>(k) * (k - 1) / 2;
    if (theta_flat.size() != npairs) {
        rep.structural_ok = false;
        rep.structural_error = "theta must have one permutation per colour pair i<j";
        return rep;
    }
    KGraph g;
    g.k = k;
    g.m = m;
    g.theta.resize(npairs);
    std::size_t t = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j, ++t) {
            int n = m[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(j)];
            if (!is_permutation(theta_flat[t], n)) {
                rep.structural_ok = false;
                rep.structural_error = "theta_{" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                       "} is not a permutation of " + std::to_string(n) + " points";
                return rep;
            }
            g.theta[t].fwd = theta_flat[t];
            g.theta[t].inv.assign(static_cast<std::size_t>(n), 0);
            for (int x = 0; x < n; ++x) g.theta[t].inv[static_cast<std::size_t>(theta_flat[t][static_cast<std::size_t>(x)])] = x;
        }

    // Cubic condition: both reorderings of e^i_{t1} e^j_{t2} e^l_{t3} into
    // descending colour order must produce the same edge triple.
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            for (int l = j + 1; l < k; ++l)
                for (int t1 = 0; t1 < m[static_cast<std::size_t>(i)]; ++t1)
                    for (int t2 = 0; t2 < m[static_cast<std::size_t>(j)]; ++t2)
                        for (int t3 = 0; t3 < m[static_cast<std::size_t>(l)]; ++t3) {
                            // path 1: swap (j,l), then (i,l), then (i,j)
                            auto [t2a, t3a] = apply_fwd(g, j, l, t2, t3);
                            auto [t1a, t3b] = apply_fwd(g, i, l, t1, t3a);
                            auto [t1b, t2b] = apply_fwd(g, i, j, t1a, t2a);
                            // path 2: swap (i,j), then (i,l), then (j,l)
                            auto [t1c, t2c] = apply_fwd(g, i, j, t1, t2);
                            auto [t1d, t3c] = apply_fwd(g, i, l, t1c, t3);
                            auto [t2d, t3d] = apply_fwd(g, j, l, t2c, t3c);
                            if (t1b != t1d || t2b != t2d || t3b != t3d)
                                rep.violations.push_back({i, j, l, t1, t2, t3});
                        }
    return rep;
}

GraphPtr make_kgraph(int k, const std::vector<int>& m,
                     const std::vector<std::vector<int>>& theta_flat) {
    ValidationReport rep = validate_kgraph(k, m, theta_flat);
    if (!rep.structural_ok) throw domain_error("invalid k-graph data: " + rep.structural_error);
    if (!rep.violations.empty()) {
        std::ostringstream os;
        os << "cubic condition fails at " << rep.violations.size() << " triple(s); first: ";
        const auto& v = rep.violations.front();
        os << "(i,j,l)=(" << v.i + 1 << "," << v.j + 1 << "," << v.l + 1 << "), (t1,t2,t3)=("
           << v.t1 + 1 << "," << v.t2 + 1 << "," << v.t3 + 1 << ")";
        throw domain_error(os.str());
    }
    auto g = std::make_shared<KGraph>();
    g->k = k;
    g->m = m;
    std::size_t npairs = static_cast<std::size_t>(k) * (k - 1) / 2;
    g->theta.resize(npairs);
    std::size_t t = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j, ++t) {
            int n = m[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(j)];
            g->theta[t].fwd = theta_flat[t];
            g->theta[t].inv.assign(static_cast<std::size_t>(n), 0);
            for (int x = 0; x < n; ++x) g->theta[t].inv[static_cast<std::size_t>(theta_flat[t][static_cast<std::size_t>(x)])] = x;
        }
    return g;
}

GraphPtr relabel_kgraph(const KGraph& g, const std::vector<int>& colour_perm,
                        const std::vector<std::vector<int>>& edge_perms) {
    if (static_cast<int>(colour_perm.size()) != g.k || static_cast<int>(edge_perms.size()) != g.k)
        throw domain_error("relabel_kgraph: wrong permutation sizes");
    for (int i = 0; i < g.k; ++i)
        if (g.m[static_cast<std::size_t>(colour_perm[static_cast<std::size_t>(i)])] != g.m[static_cast<std::size_t>(i)])
            throw domain_error("relabel_kgraph: colour permutation must preserve multiplicities");

    std::vector<int> new_m(static_cast<std::size_t>(g.k));
    for (int i = 0; i < g.k; ++i) new_m[static_cast<std::size_t>(colour_perm[static_cast<std::size_t>(i)])] = g.m[static_cast<std::size_t>(i)];

    // inverse colour map: old colour of new colour a
    std::vector<int> old_of(static_cast<std::size_t>(g.k));
    for (int i = 0; i < g.k; ++i) old_of[static_cast<std::size_t>(colour_perm[static_cast<std::size_t>(i)])] = i;

    std::vector<std::vector<int>> theta_flat;
    for (int a = 0; a < g.k; ++a)
        for (int b = a + 1; b < g.k; ++b) {
            int i = old_of[static_cast<std::size_t>(a)];
            int j = old_of[static_cast<std::size_t>(b)];
            int ma = new_m[static_cast<std::size_t>(a)];
            int mb = new_m[static_cast<std::size_t>(b)];
            std::vector<int> flat(static_cast<std::size_t>(ma * mb));
            const auto& pi = edge_perms[static_cast<std::size_t>(i)];
            const auto& pj = edge_perms[static_cast<std::size_t>(j)];
            for (int x = 0; x < ma; ++x)
                for (int y = 0; y < mb; ++y) {
                    int xp, yp;
                    if (i < j) {
                        // theta'_{ab}(pi(s), pj(t)) = (pi(s'), pj(t'))
                        int s = 0, tt = 0;
                        for (int c = 0; c < g.m[static_cast<std::size_t>(i)]; ++c)
                            if (pi[static_cast<std::size_t>(c)] == x) s = c;
                        for (int c = 0; c < g.m[static_cast<std::size_t>(j)]; ++c)
                            if (pj[static_cast<std::size_t>(c)] == y) tt = c;
                        int mj = g.m[static_cast<std::size_t>(j)];
                        int out = g.perm(i, j).fwd[static_cast<std::size_t>(s * mj + tt)];
                        xp = pi[static_cast<std::size_t>(out / mj)];
                        yp = pj[static_cast<std::size_t>(out % mj)];
                    } else {
                        // old pair is (j,i) with j<i; the new relation
                        // e^a_x e^b_y = e^b_{y'} e^a_{x'} transports through
                        // theta_{ji}^{-1}.
                        int s = 0, tt = 0;  // s: old index behind x (colour i), tt: behind y (colour j)
                        for (int c = 0; c < g.m[static_cast<std::size_t>(i)]; ++c)
                            if (pi[static_cast<std::size_t>(c)] == x) s = c;
                        for (int c = 0; c < g.m[static_cast<std::size_t>(j)]; ++c)
                            if (pj[static_cast<std::size_t>(c)] == y) tt = c;
                        int mi = g.m[static_cast<std::size_t>(i)];
                        int in = g.perm(j, i).inv[static_cast<std::size_t>(tt * mi + s)];
                        int t0 = in / mi, s0 = in % mi;
                        xp = pi[static_cast<std::size_t>(s0)];
                        yp = pj[static_cast<std::size_t>(t0)];
                    }
                    flat[static_cast<std::size_t>(x * mb + y)] = xp * mb + yp;
                }
            theta_flat.push_back(std::move(flat));
        }
    return make_kgraph(g.k, new_m, theta_flat);
}

std::string serialize_kgraph(const KGraph& g) {
    std::ostringstream os;
    os << g.k << '|';
    for (int i = 0; i < g.k; ++i) {
        if (i) os << ',';
        os << g.m[static_cast<std::size_t>(i)];
    }
    for (const auto& p : g.theta) {
        os << '|';
        for (std::size_t x = 0; x < p.fwd.size(); ++x) {
            if (x) os << ',';
            os << p.fwd[x];
        }
    }
    return os.str();
}

namespace {

void all_perms(int n, std::vector<std::vector<int>>& out) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
}

} // namespace

std::string canonical_iso_form(const KGraph& g) {
    // colour permutations restricted to equal-multiplicity colours
    std::vector<std::vector<int>> colour_perms;
    {
        std::vector<int> p(static_cast<std::size_t>(g.k));
        std::iota(p.begin(), p.end(), 0);
        std::sort(p.begin(), p.end());
        do {
            bool ok = true;
            for (int i = 0; i < g.k; ++i)
                if (g.m[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] != g.m[static_cast<std::size_t>(i)]) ok = false;
            if (ok) colour_perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    std::vector<std::vector<std::vector<int>>> edge_perm_choices(static_cast<std::size_t>(g.k));
    for (int i = 0; i < g.k; ++i) all_perms(g.m[static_cast<std::size_t>(i)], edge_perm_choices[static_cast<std::size_t>(i)]);

    std::string best;
    std::vector<std::size_t> pick(static_cast<std::size_t>(g.k), 0);
    for (const auto& cp : colour_perms) {
        // odometer over per-colour edge permutations
        std::fill(pick.begin(), pick.end(), 0);
        while (true) {
            std::vector<std::vector<int>> eps(static_cast<std::size_t>(g.k));
            for (int i = 0; i < g.k; ++i) eps[static_cast<std::size_t>(i)] = edge_perm_choices[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]];
            GraphPtr h = relabel_kgraph(g, cp, eps);
            std::string s = serialize_kgraph(*h);
            if (best.empty() || s < best) best = s;
            int c = 0;
            while (c < g.k) {
                if (++pick[static_cast<std::size_t>(c)] < edge_perm_choices[static_cast<std::size_t>(c)].size()) break;
                pick[static_cast<std::size_t>(c)] = 0;
                ++c;
            }
            if (c == g.k) break;
        }
    }
    return best;
}

} // namespace kgraph
