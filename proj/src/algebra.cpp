#include "kgraph/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "kgraph/config.hpp"
#include "kgraph/errors.hpp"

namespace kgraph {

Elem elem_zero(GraphPtr g) { return Elem{std::move(g), {}}; }

Elem elem_identity(GraphPtr g) {
    NormalWord e = NormalWord::unit(g->k);
    return elem_term(std::move(g), e, e, Rat(1));
}

Elem elem_word(GraphPtr g, const NormalWord& u) {
    return elem_term(std::move(g), u, NormalWord::unit(g->k), Rat(1));
}

Elem elem_term(GraphPtr g, const NormalWord& u, const NormalWord& v, Rat c) {
    return make_elem(std::move(g), {RawTerm{u, v, std::move(c)}});
}

namespace {

void check_word(const KGraph& g, const NormalWord& w) {
    if (static_cast<int>(w.blocks.size()) != g.k) throw domain_error("word has wrong number of colour blocks");
    for (int c = 0; c < g.k; ++c)
        for (int idx : w.blocks[static_cast<std::size_t>(c)])
            if (idx < 0 || idx >= g.m[static_cast<std::size_t>(c)]) throw domain_error("edge index out of range");
}

// Refines component terms from bidegree (p,q) to (p+r, q+r) via the
// defect-free relation s_u s_v* = sum_w s_{uw} s_{vw}*.
void refine_into(const KGraph& g, const NormalWord& u, const NormalWord& v, const Rat& c, const Deg& r,
                 std::map<std::pair<NormalWord, NormalWord>, Rat>& acc) {
    if (deg_is_zero(r)) {
        Rat& slot = acc[{u, v}];
        slot += c;
        if (slot == 0) acc.erase({u, v});
        return;
    }
    for (const NormalWord& w : enumerate_level(g, r)) {
        std::pair<NormalWord, NormalWord> key{concat(g, u, w), concat(g, v, w)};
        Rat& slot = acc[key];
        slot += c;
        if (slot == 0) acc.erase(key);
        check_term_budget(acc.size(), "canonicalize");
    }
}

// Strips one colour-i layer if every term is of the shape (u0 a, v0 a) with
// the full families present at equal coefficients.
bool try_reduce_colour(const KGraph& g, Component& comp, int i) {
    if (comp.p[static_cast<std::size_t>(i)] < 1 || comp.q[static_cast<std::size_t>(i)] < 1) return false;
    Deg pu = comp.p, pv = comp.q;
    --pu[static_cast<std::size_t>(i)];
    --pv[static_cast<std::size_t>(i)];
    std::map<std::pair<NormalWord, NormalWord>, std::pair<Rat, int>> groups;  // (coeff, count)
    for (const auto& [key, c] : comp.terms) {
        auto [u0, au] = factorize(g, key.first, pu);
        auto [v0, av] = factorize(g, key.second, pv);
        if (au != av) return false;
        auto it = groups.find({u0, v0});
        if (it == groups.end())
            groups.emplace(std::make_pair(u0, v0), std::make_pair(c, 1));
        else {
            if (it->second.first != c) return false;
            ++it->second.second;
        }
    }
    int mi = g.m[static_cast<std::size_t>(i)];
    for (const auto& [key, cc] : groups)
        if (cc.second != mi) return false;
    std::map<std::pair<NormalWord, NormalWord>, Rat> reduced;
    for (const auto& [key, cc] : groups) reduced[key] = cc.first;
    comp.terms = std::move(reduced);
    comp.p = pu;
    comp.q = pv;
    return true;
}

void reduce_component(const KGraph& g, Component& comp) {
    bool progress = true;
    while (progress) {
        progress = false;
        for (int i = 0; i < g.k; ++i)
            if (try_reduce_colour(g, comp, i)) progress = true;
    }
}

} // namespace

Elem make_elem(GraphPtr g, const std::vector<RawTerm>& raw) {
    Elem out = elem_zero(g);
    // group raw terms by degree; GMP comparisons need canonical fractions
    std::vector<RawTerm> canon = raw;
    std::map<Deg, std::vector<const RawTerm*>> groups;
    for (RawTerm& t : canon) {
        t.c.canonicalize();
        if (t.c == 0) continue;
        check_word(*g, t.u);
        check_word(*g, t.v);
        groups[deg_sub(t.u.degree(), t.v.degree())].push_back(&t);
    }
    for (auto& [n, terms] : groups) {
        Deg q = deg_zero(g->k);
        for (const RawTerm* t : terms) q = deg_join(q, t->v.degree());
        Component comp;
        comp.q = q;
        comp.p = deg_add(q, n);
        for (const RawTerm* t : terms) refine_into(*g, t->u, t->v, t->c, deg_sub(q, t->v.degree()), comp.terms);
        if (comp.terms.empty()) continue;
        reduce_component(*g, comp);
        out.comps.emplace(n, std::move(comp));
    }
    return out;
}

std::vector<RawTerm> elem_terms(const Elem& a) {
    std::vector<RawTerm> out;
    for (const auto& [n, comp] : a.comps)
        for (const auto& [key, c] : comp.terms) out.push_back({key.first, key.second, c});
    return out;
}

namespace {

void require_same_graph(const Elem& a, const Elem& b) {
    if (a.graph.get() == b.graph.get()) return;
    if (!a.graph || !b.graph || !a.graph->same_data(*b.graph)) throw domain_error("elements live over different k-graphs");
}

} // namespace

Elem add(const Elem& a, const Elem& b) {
    require_same_graph(a, b);
    std::vector<RawTerm> raw = elem_terms(a);
    std::vector<RawTerm> rb = elem_terms(b);
    raw.insert(raw.end(), rb.begin(), rb.end());
    return make_elem(a.graph, raw);
}

Elem sub(const Elem& a, const Elem& b) { return add(a, scale(b, Rat(-1))); }

Elem scale(const Elem& a, const Rat& c) {
    if (c == 0) return elem_zero(a.graph);
    Elem out = a;
    for (auto& [n, comp] : out.comps)
        for (auto& [key, coeff] : comp.terms) coeff *= c;
    return out;
}

Elem multiply(const Elem& a, const Elem& b) {
    require_same_graph(a, b);
    const KGraph& g = *a.graph;
    std::vector<RawTerm> raw;
    for (const auto& [na, ca] : a.comps)
        for (const auto& [ta, coeff_a] : ca.terms)
            for (const auto& [nb, cb] : b.comps)
                for (const auto& [tb, coeff_b] : cb.terms) {
                    // s_u s_v* . s_x s_y* = sum_{(xi,eta) in Lmin(v,x)} s_{u xi} s_{y eta}*
                    for (const auto& [xi, eta] : lambda_min_fast(g, ta.second, tb.first)) {
                        raw.push_back({concat(g, ta.first, xi), concat(g, tb.second, eta), coeff_a * coeff_b});
                        check_term_budget(raw.size(), "multiply");
                    }
                }
    return make_elem(a.graph, raw);
}

Elem adjoint(const Elem& a) {
    std::vector<RawTerm> raw;
    for (const auto& [n, comp] : a.comps)
        for (const auto& [key, c] : comp.terms) raw.push_back({key.second, key.first, c});
    return make_elem(a.graph, raw);
}

bool elem_equal(const Elem& a, const Elem& b) {
    require_same_graph(a, b);
    return a.comps == b.comps;
}

std::size_t term_count(const Elem& a) {
    std::size_t n = 0;
    for (const auto& [d, comp] : a.comps) n += comp.terms.size();
    return n;
}

Elem spectral_component(const Elem& a, const Deg& n) {
    Elem out = elem_zero(a.graph);
    auto it = a.comps.find(n);
    if (it != a.comps.end()) out.comps.emplace(n, it->second);
    return out;
}

Rat omega(const Elem& a) {
    auto it = a.comps.find(deg_zero(a.graph->k));
    if (it == a.comps.end()) return Rat(0);
    Rat sum(0);
    for (const auto& [key, c] : it->second.terms)
        if (key.first == key.second) sum += c;
    return sum * m_pow(a.graph->m, deg_negate(it->second.q));
}

Elem gamma_std(const Elem& a, const Deg& r) {
    const KGraph& g = *a.graph;
    if (deg_is_zero(r)) return a;
    std::vector<RawTerm> raw;
    std::vector<NormalWord> level = enumerate_level(g, r);
    for (const auto& [n, comp] : a.comps)
        for (const auto& [key, c] : comp.terms)
            for (const NormalWord& w : level) {
                raw.push_back({concat(g, w, key.first), concat(g, w, key.second), c});
                check_term_budget(raw.size(), "gamma");
            }
    return make_elem(a.graph, raw);
}

std::optional<Elem> gamma_unlift(const Elem& a, const Deg& r) {
    const KGraph& g = *a.graph;
    if (deg_is_zero(r)) return a;
    // If a = gamma_r(x) then s_w* a s_w = x for any fixed w in Lambda^r.
    const NormalWord w0 = enumerate_level(g, r).front();
    Elem sw = elem_word(a.graph, w0);
    Elem x = multiply(multiply(adjoint(sw), a), sw);
    if (!elem_equal(gamma_std(x, r), a)) return std::nullopt;
    return x;
}

Elem modular_delta_z(const Elem& a, long z) {
    Elem out = elem_zero(a.graph);
    for (const auto& [n, comp] : a.comps) {
        // Delta^z (s_u s_v*) = m^{z(d(v)-d(u))} s_u s_v*
        Rat f = rat_pow(m_pow(a.graph->m, n), -z);
        Component c2 = comp;
        for (auto& [key, c] : c2.terms) c *= f;
        out.comps.emplace(n, std::move(c2));
    }
    return out;
}

Elem modular_tomita_S(const Elem& a) { return adjoint(a); }

Elem modular_tomita_F(const Elem& a) {
    std::vector<RawTerm> raw;
    for (const auto& [n, comp] : a.comps) {
        Rat f = m_pow(a.graph->m, n);  // m^{d(u)-d(v)}
        for (const auto& [key, c] : comp.terms) raw.push_back({key.second, key.first, c * f});
    }
    return make_elem(a.graph, raw);
}

Elem modular_conj_J(const Elem& a) {
    std::vector<RawTerm> raw;
    for (const auto& [n, comp] : a.comps) {
        for (int x : n)
            if (x % 2 != 0)
                throw mode_error("conj_J: exact mode needs even degree differences, got an odd coordinate");
        Deg half(n.size());
        for (std::size_t i = 0; i < n.size(); ++i) half[i] = n[i] / 2;
        Rat f = m_pow(a.graph->m, half);  // m^{(d(u)-d(v))/2}
        for (const auto& [key, c] : comp.terms) raw.push_back({key.second, key.first, c * f});
    }
    return make_elem(a.graph, raw);
}

std::vector<PhasePart> modular_sigma_symbolic(const Elem& a) {
    std::vector<PhasePart> out;
    for (const auto& [n, comp] : a.comps) {
        // sigma_t scales the degree-n part by m^{it(d(v)-d(u))} = m^{-it n}
        PhasePart pp;
        pp.exponent = deg_negate(n);
        pp.part = spectral_component(a, n);
        out.push_back(std::move(pp));
    }
    return out;
}

double modular_scale(const std::vector<int>& m, const Deg& n, double z) {
    double s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += n[i] * std::log(static_cast<double>(m[i]));
    return std::exp(-z * s);
}

KmsReport kms_check(const Elem& a, const Elem& b) {
    require_same_graph(a, b);
    KmsReport rep;
    for (const auto& [na, ca] : a.comps)
        for (const auto& [nb, cb] : b.comps) {
            Elem an = spectral_component(a, na);
            Elem bn = spectral_component(b, nb);
            Rat lhs = omega(multiply(an, bn));
            Rat rhs = m_pow(a.graph->m, nb) * omega(multiply(bn, an));
            if (lhs != rhs) {
                rep.holds = false;
                rep.violation = KmsViolation{na, nb, lhs, rhs};
                return rep;
            }
        }
    return rep;
}

namespace {

// Largest singular value of the sparse coefficient matrix of one component.
double component_norm(const Component& comp) {
    // index rows by u, cols by v
    std::map<NormalWord, int> rows, cols;
    for (const auto& [key, c] : comp.terms) {
        rows.emplace(key.first, 0);
        cols.emplace(key.second, 0);
    }
    int nr = 0, nc = 0;
    for (auto& [w, i] : rows) i = nr++;
    for (auto& [w, i] : cols) i = nc++;
    struct Entry {
        int r, c;
        double v;
    };
    std::vector<Entry> entries;
    entries.reserve(comp.terms.size());
    std::vector<int> row_fill(static_cast<std::size_t>(nr), 0), col_fill(static_cast<std::size_t>(nc), 0);
    for (const auto& [key, c] : comp.terms) {
        Entry e{rows[key.first], cols[key.second], rat_double(c)};
        ++row_fill[static_cast<std::size_t>(e.r)];
        ++col_fill[static_cast<std::size_t>(e.c)];
        entries.push_back(e);
    }
    // monomial matrices: singular values are the entry magnitudes
    bool monomial = true;
    for (int f : row_fill)
        if (f > 1) monomial = false;
    for (int f : col_fill)
        if (f > 1) monomial = false;
    if (monomial) {
        double mx = 0;
        for (const Entry& e : entries) mx = std::max(mx, std::fabs(e.v));
        return mx;
    }
    // power iteration on A^T A
    std::vector<double> x(static_cast<std::size_t>(nc));
    for (int i = 0; i < nc; ++i) x[static_cast<std::size_t>(i)] = 1.0 + 0.37 * ((i * 2654435761u) % 97) / 97.0;
    double sigma = 0;
    std::vector<double> y(static_cast<std::size_t>(nr));
    for (int it = 0; it < 5000; ++it) {
        std::fill(y.begin(), y.end(), 0.0);
        for (const Entry& e : entries) y[static_cast<std::size_t>(e.r)] += e.v * x[static_cast<std::size_t>(e.c)];
        std::fill(x.begin(), x.end(), 0.0);
        for (const Entry& e : entries) x[static_cast<std::size_t>(e.c)] += e.v * y[static_cast<std::size_t>(e.r)];
        double nx = 0;
        for (double v : x) nx += v * v;
        nx = std::sqrt(nx);
        if (nx == 0) return 0;
        for (double& v : x) v /= nx;
        double next = std::sqrt(nx);
        if (it > 30 && std::fabs(next - sigma) <= 1e-14 * std::max(1.0, sigma)) {
            sigma = next;
            break;
        }
        sigma = next;
    }
    return sigma;
}

} // namespace

NormBounds norm_bounds(const Elem& a) {
    NormBounds nb;
    for (const auto& [n, comp] : a.comps) {
        double s = component_norm(comp);
        nb.lower = std::max(nb.lower, s);
        nb.upper += s;
    }
    return nb;
}

Rat norm_upper_coeff(const Elem& a) {
    Rat sum(0);
    for (const auto& [n, comp] : a.comps)
        for (const auto& [key, c] : comp.terms) sum += abs(c);
    return sum;
}

} // namespace kgraph
