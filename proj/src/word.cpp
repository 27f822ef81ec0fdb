#include "kgraph/word.hpp"

#include <algorithm>
#include <sstream>

#include "kgraph/config.hpp"
#include "kgraph/errors.hpp"

namespace kgraph {

bool NormalWord::empty() const {
    for (const auto& b : blocks)
        if (!b.empty()) return false;
    return true;
}

Deg NormalWord::degree() const {
    Deg d(blocks.size());
    for (std::size_t c = 0; c < blocks.size(); ++c) d[c] = static_cast<int>(blocks[c].size());
    return d;
}

int NormalWord::length() const {
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.size());
    return n;
}

std::vector<Edge> to_edges(const NormalWord& w) {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(w.length()));
    for (int c = 0; c < static_cast<int>(w.blocks.size()); ++c)
        for (int idx : w.blocks[static_cast<std::size_t>(c)]) out.push_back({c, idx});
    return out;
}

NormalWord from_sorted_edges(int k, const std::vector<Edge>& edges) {
    NormalWord w = NormalWord::unit(k);
    for (const Edge& e : edges) w.blocks[static_cast<std::size_t>(e.colour)].push_back(e.index);
    return w;
}

namespace {

void check_edges(const KGraph& g, const std::vector<Edge>& w) {
    for (const Edge& e : w)
        if (e.colour < 0 || e.colour >= g.k || e.index < 0 || e.index >= g.m[static_cast<std::size_t>(e.colour)])
            throw domain_error("edge out of range for graph");
}

// Swaps the descending adjacent pair (w[q], w[q+1]) with colour(w[q]) >
// colour(w[q+1]) into ascending order via theta^{-1}.
void swap_descent(const KGraph& g, std::vector<Edge>& w, std::size_t q) {
    int j = w[q].colour, i = w[q + 1].colour;  // i < j
    int mj = g.m[static_cast<std::size_t>(j)];
    int flat = g.perm(i, j).inv[static_cast<std::size_t>(w[q + 1].index * mj + w[q].index)];
    w[q] = {i, flat / mj};
    w[q + 1] = {j, flat % mj};
}

} // namespace

NormalWord normalize(const KGraph& g, std::vector<Edge> w) {
    check_edges(g, w);
    // insertion-sort by colour, rewriting at each adjacent swap
    for (std::size_t i = 1; i < w.size(); ++i)
        for (std::size_t q = i; q > 0 && w[q - 1].colour > w[q].colour; --q) swap_descent(g, w, q - 1);
    return from_sorted_edges(g.k, w);
}

NormalWord normalize_random(const KGraph& g, std::vector<Edge> w, std::mt19937& rng) {
    check_edges(g, w);
    while (true) {
        std::vector<std::size_t> descents;
        for (std::size_t q = 0; q + 1 < w.size(); ++q)
            if (w[q].colour > w[q + 1].colour) descents.push_back(q);
        if (descents.empty()) break;
        std::size_t pick = descents[std::uniform_int_distribution<std::size_t>(0, descents.size() - 1)(rng)];
        swap_descent(g, w, pick);
    }
    return from_sorted_edges(g.k, w);
}

NormalWord concat(const KGraph& g, const NormalWord& a, const NormalWord& b) {
    std::vector<Edge> w = to_edges(a);
    std::vector<Edge> wb = to_edges(b);
    w.insert(w.end(), wb.begin(), wb.end());
    return normalize(g, std::move(w));
}

std::pair<Edge, std::vector<Edge>> pull_front_colour(const KGraph& g, std::vector<Edge> w, int colour) {
    std::size_t pos = w.size();
    for (std::size_t q = 0; q < w.size(); ++q)
        if (w[q].colour == colour) {
            pos = q;
            break;
        }
    if (pos == w.size()) throw domain_error("pull_front_colour: no edge of requested colour");
    for (std::size_t q = pos; q > 0; --q) {
        // move w[q] (colour c) left past w[q-1] (colour i != c)
        int c = w[q].colour, i = w[q - 1].colour;
        if (i < c) {
            // theta_{ic} forward: e^i_s e^c_t = e^c_{t'} e^i_{s'}
            int mc = g.m[static_cast<std::size_t>(c)];
            int flat = g.perm(i, c).fwd[static_cast<std::size_t>(w[q - 1].index * mc + w[q].index)];
            w[q - 1] = {c, flat % mc};
            w[q] = {i, flat / mc};
        } else {
            // i > c: theta_{ci}^{-1}: e^i_s e^c_t <- e^c_x e^i_y
            int mi = g.m[static_cast<std::size_t>(i)];
            int flat = g.perm(c, i).inv[static_cast<std::size_t>(w[q].index * mi + w[q - 1].index)];
            w[q - 1] = {c, flat / mi};
            w[q] = {i, flat % mi};
        }
    }
    Edge front = w.front();
    w.erase(w.begin());
    return {front, std::move(w)};
}

std::pair<NormalWord, NormalWord> factorize(const KGraph& g, const NormalWord& w, const Deg& p) {
    Deg d = w.degree();
    if (static_cast<int>(p.size()) != g.k || !deg_nonneg(p) || !deg_le(p, d))
        throw domain_error("factorize: p must satisfy 0 <= p <= d(w)");
    std::vector<Edge> rest = to_edges(w);
    NormalWord mu = NormalWord::unit(g.k);
    for (int c = 0; c < g.k; ++c)
        for (int r = 0; r < p[static_cast<std::size_t>(c)]; ++r) {
            auto [e, tail] = pull_front_colour(g, std::move(rest), c);
            mu.blocks[static_cast<std::size_t>(c)].push_back(e.index);
            rest = std::move(tail);
        }
    return {std::move(mu), from_sorted_edges(g.k, rest)};
}

std::vector<NormalWord> enumerate_level(const KGraph& g, const Deg& p) {
    if (static_cast<int>(p.size()) != g.k || !deg_nonneg(p)) throw domain_error("enumerate_level: bad degree");
    long n = m_pow_long(g.m, p, static_cast<long>(term_budget()));
    std::vector<NormalWord> out;
    out.reserve(static_cast<std::size_t>(n));
    NormalWord w = NormalWord::unit(g.k);
    for (int c = 0; c < g.k; ++c) w.blocks[static_cast<std::size_t>(c)].assign(static_cast<std::size_t>(p[static_cast<std::size_t>(c)]), 0);
    while (true) {
        out.push_back(w);
        // odometer: last position of last block is least significant
        int c = g.k - 1;
        int pos = static_cast<int>(w.blocks.empty() ? 0 : w.blocks[static_cast<std::size_t>(c)].size()) - 1;
        for (;;) {
            while (c >= 0 && w.blocks[static_cast<std::size_t>(c)].empty()) {
                --c;
                if (c >= 0) pos = static_cast<int>(w.blocks[static_cast<std::size_t>(c)].size()) - 1;
            }
            if (c < 0) return out;
            int& v = w.blocks[static_cast<std::size_t>(c)][static_cast<std::size_t>(pos)];
            if (++v < g.m[static_cast<std::size_t>(c)]) break;
            v = 0;
            if (--pos < 0) {
                --c;
                if (c >= 0) pos = static_cast<int>(w.blocks[static_cast<std::size_t>(c)].size()) - 1;
            }
        }
    }
}

std::vector<std::pair<NormalWord, NormalWord>>
lambda_min(const KGraph& g, const NormalWord& mu, const NormalWord& nu) {
    Deg dmu = mu.degree(), dnu = nu.degree();
    Deg join = deg_join(dmu, dnu);
    std::vector<std::pair<NormalWord, NormalWord>> out;
    for (const NormalWord& xi : enumerate_level(g, deg_sub(join, dmu))) {
        NormalWord w = concat(g, mu, xi);
        auto [head, eta] = factorize(g, w, dnu);
        if (head == nu) out.emplace_back(xi, eta);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

int lowest_colour(const NormalWord& w) {
    for (std::size_t c = 0; c < w.blocks.size(); ++c)
        if (!w.blocks[c].empty()) return static_cast<int>(c);
    return -1;
}

NormalWord strip_first(const NormalWord& w, int c) {
    NormalWord out = w;
    out.blocks[static_cast<std::size_t>(c)].erase(out.blocks[static_cast<std::size_t>(c)].begin());
    return out;
}

NormalWord prepend(const NormalWord& w, const Edge& e) {
    // valid only when w has no colours below e.colour
    NormalWord out = w;
    out.blocks[static_cast<std::size_t>(e.colour)].insert(out.blocks[static_cast<std::size_t>(e.colour)].begin(), e.index);
    return out;
}

void lambda_min_fast_rec(const KGraph& g, const NormalWord& mu, const NormalWord& nu, bool swapped,
                         std::vector<std::pair<NormalWord, NormalWord>>& out, int cap) {
    if (cap > 0 && static_cast<int>(out.size()) >= cap) return;
    if (mu.empty()) {
        if (swapped)
            out.emplace_back(NormalWord::unit(g.k), nu);
        else
            out.emplace_back(nu, NormalWord::unit(g.k));
        return;
    }
    if (nu.empty()) {
        if (swapped)
            out.emplace_back(mu, NormalWord::unit(g.k));
        else
            out.emplace_back(NormalWord::unit(g.k), mu);
        return;
    }
    int cm = lowest_colour(mu), cn = lowest_colour(nu);
    if (cm == cn) {
        if (mu.blocks[static_cast<std::size_t>(cm)].front() != nu.blocks[static_cast<std::size_t>(cm)].front()) return;
        lambda_min_fast_rec(g, strip_first(mu, cm), strip_first(nu, cn), swapped, out, cap);
        return;
    }
    if (cm > cn) {
        lambda_min_fast_rec(g, nu, mu, !swapped, out, cap);
        return;
    }
    // cm < cn: nu has no colour-cm edges; the leading edge e of mu must arise
    // as a colour-cm edge f appended to nu and transported to the front.
    Edge e{cm, mu.blocks[static_cast<std::size_t>(cm)].front()};
    NormalWord mu1 = strip_first(mu, cm);
    std::vector<Edge> nu_edges = to_edges(nu);
    for (int f = 0; f < g.m[static_cast<std::size_t>(cm)]; ++f) {
        std::vector<Edge> wf = nu_edges;
        wf.push_back({cm, f});
        auto [front, rest] = pull_front_colour(g, std::move(wf), cm);
        if (front == e) {
            std::size_t before = out.size();
            lambda_min_fast_rec(g, mu1, from_sorted_edges(g.k, rest), swapped, out, cap);
            // reattach f on the eta side of every new pair
            for (std::size_t t = before; t < out.size(); ++t) {
                NormalWord& eta = swapped ? out[t].first : out[t].second;
                eta = prepend(eta, {cm, f});
            }
        }
        if (cap > 0 && static_cast<int>(out.size()) >= cap) return;
    }
}

} // namespace

std::vector<std::pair<NormalWord, NormalWord>>
lambda_min_fast(const KGraph& g, const NormalWord& mu, const NormalWord& nu) {
    std::vector<std::pair<NormalWord, NormalWord>> out;
    lambda_min_fast_rec(g, mu, nu, false, out, 0);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Count-only version of the recursion on flat edge arrays; the alignment
// scans only need |Lambda^min| <= 1, so no pairs are materialized.
int count_rec(const KGraph& g, const Edge* mu, int nmu, std::vector<Edge>& nu, int cap) {
    while (true) {
        if (nmu == 0 || nu.empty()) return 1;
        int a = mu[0].colour, b = nu.front().colour;
        if (a == b) {
            if (mu[0].index != nu.front().index) return 0;
            ++mu;
            --nmu;
            nu.erase(nu.begin());
            continue;
        }
        if (a > b) {
            // counts are symmetric in (mu, nu)
            std::vector<Edge> nu2 = nu;
            std::vector<Edge> mu2(mu, mu + nmu);
            return count_rec(g, nu2.data(), static_cast<int>(nu2.size()), mu2, cap);
        }
        // a < b: nu has no colour-a edges; enumerate the appended edge f
        int total = 0;
        for (int f = 0; f < g.m[static_cast<std::size_t>(a)]; ++f) {
            std::vector<Edge> w = nu;
            w.push_back({a, f});
            // pull the last edge (colour a) to the front
            for (std::size_t q = w.size() - 1; q > 0; --q) {
                int i = w[q - 1].colour;  // all differ from a
                if (i < a) {
                    int ma = g.m[static_cast<std::size_t>(a)];
                    int flat = g.perm(i, a).fwd[static_cast<std::size_t>(w[q - 1].index * ma + w[q].index)];
                    w[q - 1] = {a, flat % ma};
                    w[q] = {i, flat / ma};
                } else {
                    int mi = g.m[static_cast<std::size_t>(i)];
                    int flat = g.perm(a, i).inv[static_cast<std::size_t>(w[q].index * mi + w[q - 1].index)];
                    w[q - 1] = {a, flat / mi};
                    w[q] = {i, flat % mi};
                }
            }
            if (w.front() == mu[0]) {
                w.erase(w.begin());
                total += count_rec(g, mu + 1, nmu - 1, w, cap);
                if (total >= cap) return total;
            }
        }
        return total;
    }
}

} // namespace

int lambda_min_count(const KGraph& g, const NormalWord& mu, const NormalWord& nu, int cap) {
    std::vector<Edge> me = to_edges(mu);
    std::vector<Edge> ne = to_edges(nu);
    return count_rec(g, me.data(), static_cast<int>(me.size()), ne, cap);
}

LpbReport check_little_pullback(const KGraph& g) {
    LpbReport rep;
    for (int i = 0; i < g.k && rep.lpb; ++i)
        for (int j = i + 1; j < g.k && rep.lpb; ++j)
            for (int s = 0; s < g.m[static_cast<std::size_t>(i)] && rep.lpb; ++s)
                for (int t = 0; t < g.m[static_cast<std::size_t>(j)]; ++t) {
                    NormalWord e = NormalWord::unit(g.k), f = NormalWord::unit(g.k);
                    e.blocks[static_cast<std::size_t>(i)].push_back(s);
                    f.blocks[static_cast<std::size_t>(j)].push_back(t);
                    if (static_cast<int>(lambda_min(g, e, f).size()) > 1) {
                        rep.lpb = false;
                        rep.witness = std::make_pair(Edge{i, s}, Edge{j, t});
                        break;
                    }
                }
    return rep;
}

AlignReport check_singly_aligned(const KGraph& g, const Deg& maxdeg) {
    AlignReport rep;
    if (static_cast<int>(maxdeg.size()) != g.k || !deg_nonneg(maxdeg))
        throw domain_error("check_singly_aligned: bad degree bound");
    // Every pair (mu,nu) either has an empty word (at most one minimal
    // extension trivially), shares its lowest colour (then Lambda^min equals
    // that of a stripped pair that is also enumerated), or has distinct
    // lowest colours. Only the last kind needs counting.
    std::vector<std::vector<NormalWord>> by_lowest(static_cast<std::size_t>(g.k));
    Deg p = deg_zero(g.k);
    while (true) {
        if (!deg_is_zero(p))
            for (const NormalWord& w : enumerate_level(g, p)) by_lowest[static_cast<std::size_t>(lowest_colour(w))].push_back(w);
        int c = g.k - 1;
        while (c >= 0 && p[static_cast<std::size_t>(c)] == maxdeg[static_cast<std::size_t>(c)]) {
            p[static_cast<std::size_t>(c)] = 0;
            --c;
        }
        if (c < 0) break;
        ++p[static_cast<std::size_t>(c)];
    }
    for (int a = 0; a < g.k; ++a)
        for (int b = a + 1; b < g.k; ++b)
            for (const NormalWord& mu : by_lowest[static_cast<std::size_t>(a)])
                for (const NormalWord& nu : by_lowest[static_cast<std::size_t>(b)])
                    if (lambda_min_count(g, mu, nu, 2) > 1) {
                        rep.singly_aligned = false;
                        rep.witness = std::make_pair(mu, nu);
                        return rep;
                    }
    return rep;
}

} // namespace kgraph
