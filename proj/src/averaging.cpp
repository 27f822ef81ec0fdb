#include "kgraph/averaging.hpp"

#include <algorithm>
#include <numeric>

#include "kgraph/config.hpp"
#include "kgraph/errors.hpp"

namespace kgraph {

CuntzTuple CuntzTuple::standard(GraphPtr g) {
    CuntzTuple e;
    e.graph = g;
    e.gamma_level = deg_zero(g->k);
    for (int c = 0; c < g->k; ++c)
        for (int s = 0; s < g->m[static_cast<std::size_t>(c)]; ++s) {
            NormalWord w = NormalWord::unit(g->k);
            w.blocks[static_cast<std::size_t>(c)].push_back(s);
            e.rep.emplace(Edge{c, s}, elem_word(g, w));
        }
    return e;
}

CuntzTuple CuntzTuple::gamma_image(GraphPtr g, const Deg& r) {
    CuntzTuple e = standard(g);
    if (deg_is_zero(r)) return e;
    e.gamma_level = r;
    for (auto& [edge, img] : e.rep) img = gamma_std(img, r);
    return e;
}

CuntzTuple CuntzTuple::from_rep(GraphPtr g, std::map<Edge, Elem> rep) {
    CuntzTuple e;
    e.graph = std::move(g);
    e.rep = std::move(rep);
    return e;
}

Elem CuntzTuple::word_image(const NormalWord& w) const {
    Elem out = elem_identity(graph);
    for (const Edge& e : to_edges(w)) out = multiply(out, rep.at(e));
    return out;
}

CuntzCheck verify_cuntz(const CuntzTuple& e) {
    const KGraph& g = *e.graph;
    Elem id = elem_identity(e.graph);
    for (int c = 0; c < g.k; ++c) {
        Elem defect = elem_zero(e.graph);
        for (int s = 0; s < g.m[static_cast<std::size_t>(c)]; ++s) {
            const Elem& es = e.rep.at({c, s});
            for (int t = 0; t < g.m[static_cast<std::size_t>(c)]; ++t) {
                Elem prod = multiply(adjoint(es), e.rep.at({c, t}));
                Elem want = (s == t) ? id : elem_zero(e.graph);
                if (!elem_equal(prod, want))
                    return {false, "orthogonality fails at colour " + std::to_string(c + 1)};
            }
            defect = add(defect, multiply(es, adjoint(es)));
        }
        if (!elem_equal(defect, id)) return {false, "defect-free relation fails at colour " + std::to_string(c + 1)};
    }
    for (int i = 0; i < g.k; ++i)
        for (int j = i + 1; j < g.k; ++j)
            for (int s = 0; s < g.m[static_cast<std::size_t>(i)]; ++s)
                for (int t = 0; t < g.m[static_cast<std::size_t>(j)]; ++t) {
                    int mj = g.m[static_cast<std::size_t>(j)];
                    int out = g.perm(i, j).fwd[static_cast<std::size_t>(s * mj + t)];
                    Elem lhs = multiply(e.rep.at({i, s}), e.rep.at({j, t}));
                    Elem rhs = multiply(e.rep.at({j, out % mj}), e.rep.at({i, out / mj}));
                    if (!elem_equal(lhs, rhs)) return {false, "theta-commutation fails"};
                }
    return {true, ""};
}

Elem gamma_endo(const CuntzTuple& e, const Deg& p, const Elem& a) {
    if (e.gamma_level && deg_is_zero(*e.gamma_level)) return gamma_std(a, p);
    Elem out = elem_zero(e.graph);
    std::vector<RawTerm> raw;
    for (const NormalWord& w : enumerate_level(*e.graph, p)) {
        Elem ew = e.word_image(w);
        Elem term = multiply(multiply(ew, a), adjoint(ew));
        for (RawTerm& t : elem_terms(term)) raw.push_back(std::move(t));
        check_term_budget(raw.size(), "gamma_endo");
    }
    return make_elem(e.graph, raw);
}

Elem averaging_unitary(const CuntzTuple& e, const AveragingUnitarySpec& spec) {
    const KGraph& g = *e.graph;
    std::vector<NormalWord> level = enumerate_level(g, spec.p);
    if (spec.f.size() != level.size() || spec.sigma.size() != level.size())
        throw domain_error("averaging_unitary: spec arrays must index Lambda^p");
    if (e.gamma_level && deg_is_zero(*e.gamma_level)) {
        std::vector<RawTerm> raw;
        for (std::size_t i = 0; i < level.size(); ++i)
            raw.push_back({level[static_cast<std::size_t>(spec.sigma[i])], level[i], spec.f[i] ? Rat(-1) : Rat(1)});
        return make_elem(e.graph, raw);
    }
    Elem out = elem_zero(e.graph);
    for (std::size_t i = 0; i < level.size(); ++i) {
        Elem term = multiply(e.word_image(level[static_cast<std::size_t>(spec.sigma[i])]), adjoint(e.word_image(level[i])));
        out = add(out, spec.f[i] ? scale(term, Rat(-1)) : term);
    }
    return out;
}

Elem alpha_brute(const CuntzTuple& e, const Deg& p, const Elem& a, unsigned long cap) {
    const KGraph& g = *e.graph;
    long mp = m_pow_long(g.m, p, 64);
    unsigned long count = 1;
    for (long i = 0; i < mp; ++i) {
        count *= 2;
        if (count > cap) throw resource_error("alpha_brute: 2^{m^p}(m^p)! exceeds cap; use alpha_closed");
    }
    for (long i = 2; i <= mp; ++i) {
        count *= static_cast<unsigned long>(i);
        if (count > cap) throw resource_error("alpha_brute: 2^{m^p}(m^p)! exceeds cap; use alpha_closed");
    }
    std::vector<int> sigma(static_cast<std::size_t>(mp));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<RawTerm> raw;
    do {
        for (unsigned long mask = 0; mask < (1ul << mp); ++mask) {
            AveragingUnitarySpec spec;
            spec.p = p;
            spec.sigma = sigma;
            spec.f.resize(static_cast<std::size_t>(mp));
            for (long b = 0; b < mp; ++b) spec.f[static_cast<std::size_t>(b)] = (mask >> b) & 1u;
            Elem u = averaging_unitary(e, spec);
            Elem conj = multiply(multiply(u, a), adjoint(u));
            for (RawTerm& t : elem_terms(conj)) raw.push_back(std::move(t));
            check_term_budget(raw.size(), "alpha_brute");
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    Rat inv = Rat(1) / Rat(static_cast<long>(count));
    for (RawTerm& t : raw) t.c *= inv;
    return make_elem(e.graph, raw);
}

Elem alpha_closed_lifted(GraphPtr g, const Deg& p, const Elem& x) {
    const KGraph& gr = *g;
    Rat inv_mp = Rat(1) / m_pow(gr.m, p);
    std::vector<RawTerm> raw;
    for (const auto& [n, comp] : x.comps) {
        // refine so that both sides factor through degree p, then apply the
        // delta_{u1,v1} closed form
        Deg ru = deg_join(deg_sub(p, comp.p), deg_zero(gr.k));
        Deg rv = deg_join(deg_sub(p, comp.q), deg_zero(gr.k));
        Deg r = deg_join(ru, rv);
        std::vector<NormalWord> ext = enumerate_level(gr, r);
        for (const auto& [key, c] : comp.terms)
            for (const NormalWord& w : ext) {
                NormalWord u = concat(gr, key.first, w);
                NormalWord v = concat(gr, key.second, w);
                auto [u1, u2] = factorize(gr, u, p);
                auto [v1, v2] = factorize(gr, v, p);
                if (u1 == v1) {
                    raw.push_back({u2, v2, c * inv_mp});
                    check_term_budget(raw.size(), "alpha_closed");
                }
            }
    }
    return make_elem(std::move(g), raw);
}

Elem alpha_closed(GraphPtr g, const Deg& p, const Elem& x) {
    return gamma_std(alpha_closed_lifted(std::move(g), p, x), p);
}

Elem alpha_closed_tuple(const CuntzTuple& e, const Deg& p, const Elem& a) {
    if (!e.gamma_level) throw shape_error("alpha_closed needs a standard or gamma-image tuple; use alpha_brute");
    const Deg& r = *e.gamma_level;
    if (deg_is_zero(r)) return alpha_closed(e.graph, p, a);
    std::optional<Elem> x = gamma_unlift(a, r);
    if (!x) throw shape_error("alpha_closed: argument is not a gamma image matching the tuple");
    return gamma_std(alpha_closed(e.graph, p, *x), r);
}

IntrinsicUnitary build_intrinsic_unitary(GraphPtr g, const Deg& gvec, const std::vector<int>* pairing) {
    const KGraph& gr = *g;
    Deg gp = deg_pos(gvec), gn = deg_neg(gvec);
    if (m_pow_int(gr.m, gp) != m_pow_int(gr.m, gn))
        throw domain_error("build_intrinsic_unitary: g is not in the intrinsic group (m^g != 1)");
    std::vector<NormalWord> up = enumerate_level(gr, gp);
    std::vector<NormalWord> dn = enumerate_level(gr, gn);
    IntrinsicUnitary out;
    out.gvec = gvec;
    if (pairing) {
        out.pairing = *pairing;
        std::vector<char> seen(dn.size(), 0);
        if (out.pairing.size() != up.size()) throw domain_error("build_intrinsic_unitary: pairing size mismatch");
        for (int t : out.pairing) {
            if (t < 0 || t >= static_cast<int>(dn.size()) || seen[static_cast<std::size_t>(t)])
                throw domain_error("build_intrinsic_unitary: pairing is not a bijection");
            seen[static_cast<std::size_t>(t)] = 1;
        }
    } else {
        out.pairing.resize(up.size());
        std::iota(out.pairing.begin(), out.pairing.end(), 0);
    }
    std::vector<RawTerm> raw;
    for (std::size_t i = 0; i < up.size(); ++i)
        raw.push_back({up[i], dn[static_cast<std::size_t>(out.pairing[i])], Rat(1)});
    out.element = make_elem(g, raw);
    Elem id = elem_identity(g);
    if (!elem_equal(multiply(out.element, adjoint(out.element)), id) ||
        !elem_equal(multiply(adjoint(out.element), out.element), id))
        throw domain_error("build_intrinsic_unitary: U is not unitary (internal)");
    return out;
}

namespace {

Rat comp_coeff_sum(const Elem& x, const Deg& n) {
    auto it = x.comps.find(n);
    if (it == x.comps.end()) return Rat(0);
    Rat s(0);
    for (const auto& [key, c] : it->second.terms) s += abs(c);
    return s;
}

void require_lpb(const KGraph& g, const char* who) {
    if (!check_little_pullback(g).lpb)
        throw domain_error(std::string(who) + ": the graph lacks the little pull-back property");
}

// Exact sign-diagonal and cyclic-shift averaging inside the level-n matrix
// picture, applied to the whole element through the algebra. Sends the core
// component to tau(A_0) I and leaves scalars fixed.
Elem matrix_dixmier_apply(GraphPtr g, int level, const Elem& x) {
    CoreMatrixLevel lvl = matrix_level(g, level, static_cast<long>(term_budget()));
    Elem cur = x;
    Elem id = elem_identity(g);
    for (long j = 0; j < lvl.dim; ++j) {
        // D_j = I - 2 E_{jj}
        Elem dj = sub(id, scale(elem_term(g, lvl.basis[static_cast<std::size_t>(j)], lvl.basis[static_cast<std::size_t>(j)], Rat(1)),
                                Rat(2)));
        cur = scale(add(cur, multiply(multiply(dj, cur), dj)), Rat(1, 2));
    }
    // C = sum_u E_{shift(u), u}
    std::vector<RawTerm> rawc;
    for (long i = 0; i < lvl.dim; ++i)
        rawc.push_back({lvl.basis[static_cast<std::size_t>((i + 1) % lvl.dim)], lvl.basis[static_cast<std::size_t>(i)], Rat(1)});
    Elem c = make_elem(g, rawc);
    Elem cpow = id;
    Elem acc = elem_zero(g);
    for (long t = 0; t < lvl.dim; ++t) {
        acc = add(acc, multiply(multiply(cpow, cur), adjoint(cpow)));
        cpow = multiply(cpow, c);
    }
    return scale(acc, Rat(1, static_cast<unsigned long>(lvl.dim)));
}

} // namespace

ShrinkResult shrink_offdiagonal(GraphPtr g, const Elem& a, const Rat& eps, int forced_levels) {
    const KGraph& gr = *g;
    require_lpb(gr, "shrink_offdiagonal");
    ShrinkResult out;
    out.result = elem_zero(g);
    if (a.is_zero()) return out;
    if (a.comps.size() != 1) throw domain_error("shrink_offdiagonal: element must be homogeneous");
    const Deg n = a.comps.begin()->first;
    if (deg_is_zero(n)) throw domain_error("shrink_offdiagonal: degree must be nonzero");
    const Component& comp = a.comps.begin()->second;
    Deg np = deg_pos(n), nn = deg_neg(n);
    Deg q = deg_sub(comp.q, nn);

    // alpha_q stage: surviving terms share their degree-q prefix, so the
    // element becomes gamma_q of a coefficient vector over
    // Lambda^{n+} x Lambda^{n-}
    std::map<std::pair<NormalWord, NormalWord>, Rat> coeffs;
    Rat inv_mq = Rat(1) / m_pow(gr.m, q);
    for (const auto& [key, c] : comp.terms) {
        auto [x1, x2] = factorize(gr, key.first, q);
        auto [y1, y2] = factorize(gr, key.second, q);
        if (x1 != y1) continue;
        Rat& slot = coeffs[{x2, y2}];
        slot += c * inv_mq;
        if (slot == 0) coeffs.erase({x2, y2});
    }
    out.schedule.steps.push_back({"alpha_q", q, deg_zero(gr.k), 0});

    Rat s(0);
    for (const auto& [key, c] : coeffs) s += abs(c);
    out.coeff_sum = s;

    Deg p = deg_add(np, nn);
    out.contraction_p = p;
    Rat inv_mp = Rat(1) / m_pow(gr.m, p);
    int levels = 0;
    if (forced_levels >= 0)
        levels = forced_levels;
    else {
        Rat bound = s;
        while (bound >= eps) {
            bound *= inv_mp;
            ++levels;
        }
    }

    Deg level_deg = q;
    for (int j = 0; j < levels; ++j) {
        std::map<std::pair<NormalWord, NormalWord>, Rat> next;
        for (const auto& [key, c] : coeffs) {
            auto pairs1 = lambda_min_fast(gr, key.first, key.second);
            if (pairs1.empty()) continue;
            if (pairs1.size() > 1) throw domain_error("shrink_offdiagonal: single alignment violated (internal)");
            auto pairs2 = lambda_min_fast(gr, pairs1[0].first, pairs1[0].second);
            if (pairs2.empty()) continue;
            if (pairs2.size() > 1) throw domain_error("shrink_offdiagonal: single alignment violated (internal)");
            std::pair<NormalWord, NormalWord> nk{pairs2[0].first, pairs2[0].second};
            Rat& slot = next[nk];
            slot += c * inv_mp;
            if (slot == 0) next.erase(nk);
        }
        out.schedule.steps.push_back({"alpha_p_level", p, level_deg, 0});
        level_deg = deg_add(level_deg, p);
        coeffs = std::move(next);
    }
    out.levels = levels;
    out.schedule.residual_bound = s * rat_pow(inv_mp, levels);

    std::vector<RawTerm> raw;
    for (const auto& [key, c] : coeffs) raw.push_back({key.first, key.second, c});
    out.lifted = make_elem(g, raw);
    out.lifted_level = level_deg;
    out.result = gamma_std(out.lifted, level_deg);
    if (forced_levels < 0) {
        double ub = norm_bounds(out.result).upper;
        if (!(ub < rat_double(eps) + 1e-12))
            throw domain_error("shrink_offdiagonal: float norm check failed (internal)");
    }
    return out;
}

DixmierResult dixmier_average(GraphPtr g, const Elem& a, const Rat& eps) {
    const KGraph& gr = *g;
    require_lpb(gr, "dixmier_average");
    if (eps <= 0) throw domain_error("dixmier_average: eps must be positive");
    DixmierResult out;
    out.scalar = omega(a);
    out.final_level = deg_zero(gr.k);

    Elem x = a;
    const Deg zero = deg_zero(gr.k);

    // Matrix stage first: averages the core component exactly onto
    // omega(A) I; scalars stay fixed under every later averaging step.
    auto core_it = x.comps.find(zero);
    if (core_it != x.comps.end()) {
        bool already_scalar = core_it->second.terms.size() == 1 && core_it->second.terms.begin()->first.first.empty() &&
                              core_it->second.terms.begin()->first.second.empty();
        if (!already_scalar) {
            int level = 0;
            for (int v : core_it->second.q) level = std::max(level, v);
            x = matrix_dixmier_apply(g, level, x);
            out.schedule.steps.push_back({"matrix_dixmier", zero, zero, level});
            Elem core_after = spectral_component(x, zero);
            if (!elem_equal(core_after, scale(elem_identity(g), out.scalar)))
                throw domain_error("dixmier_average: matrix stage did not reach the scalar (internal)");
        }
    }

    // Off-diagonal components, lex order, with eps/L splitting.
    std::vector<Deg> degrees;
    for (const auto& [n, comp] : x.comps)
        if (!deg_is_zero(n)) degrees.push_back(n);
    Rat eps_i = degrees.empty() ? eps : eps / Rat(static_cast<long>(degrees.size()));

    Deg r = deg_zero(gr.k);
    Rat bound(0);
    for (const Deg& n : degrees) {
        auto it = x.comps.find(n);
        if (it == x.comps.end()) continue;  // killed by an earlier schedule
        Deg np = deg_pos(n), nn = deg_neg(n);
        Deg q = deg_sub(it->second.q, nn);
        x = alpha_closed_lifted(g, q, x);
        out.schedule.steps.push_back({"alpha_q", q, r, 0});
        r = deg_add(r, q);

        Rat s = comp_coeff_sum(x, n);
        Deg p = deg_add(np, nn);
        Rat inv_mp = Rat(1) / m_pow(gr.m, p);
        int levels = 0;
        Rat b = s;
        while (b >= eps_i) {
            b *= inv_mp;
            ++levels;
        }
        for (int j = 0; j < levels; ++j) {
            x = alpha_closed_lifted(g, p, x);
            out.schedule.steps.push_back({"alpha_p_level", p, r, 0});
            r = deg_add(r, p);
        }
        bound += b;
    }
    out.schedule.residual_bound = bound;
    out.final_level = r;
    out.final_lifted = x;

    // sanity: the lifted core must be exactly scalar I (or absent when 0)
    Elem core = spectral_component(x, zero);
    Elem want = out.scalar == 0 ? elem_zero(g) : scale(elem_identity(g), out.scalar);
    if (!elem_equal(core, want)) throw domain_error("dixmier_average: core drifted (internal)");
    return out;
}

ReplayReport replay_schedule(GraphPtr g, const Elem& a, const AveragingSchedule& sched, const Rat& eps,
                             const Rat& scalar) {
    const KGraph& gr = *g;
    ReplayReport rep;
    Elem x = a;
    Deg r = deg_zero(gr.k);
    for (const ScheduleStep& step : sched.steps) {
        if (step.kind == "matrix_dixmier") {
            if (!deg_is_zero(r)) return {false, "matrix step after contraction levels is not replayable"};
            x = matrix_dixmier_apply(g, step.matrix_level, x);
        } else if (step.kind == "alpha_q" || step.kind == "alpha_p_level") {
            if (step.tuple_level != r)
                return {false, "schedule tuple level does not match replay state"};
            x = alpha_closed_lifted(g, step.p, x);
            r = deg_add(r, step.p);
        } else {
            return {false, "unknown schedule step kind: " + step.kind};
        }
    }
    Rat lam = omega(x);
    if (lam != scalar) return {false, "recomputed scalar " + rat_str(lam) + " != recorded " + rat_str(scalar)};
    Elem core = spectral_component(x, deg_zero(gr.k));
    Elem want = lam == 0 ? elem_zero(g) : scale(elem_identity(g), lam);
    if (!elem_equal(core, want)) return {false, "core component is not scalar after replay"};
    Rat resid(0);
    for (const auto& [n, comp] : x.comps)
        if (!deg_is_zero(n))
            for (const auto& [key, c] : comp.terms) resid += abs(c);
    if (resid > sched.residual_bound)
        return {false, "residual coefficient bound " + rat_str(resid) + " exceeds recorded " + rat_str(sched.residual_bound)};
    if (!(sched.residual_bound < eps))
        return {false, "recorded residual bound is not below eps"};
    return rep;
}

} // namespace kgraph
