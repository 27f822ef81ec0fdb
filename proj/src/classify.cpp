#include "kgraph/classify.hpp"

#include <numeric>

#include "kgraph/errors.hpp"

namespace kgraph {

namespace {

// m_1^{a_j} = m_j^{b_j} with gcd(a_j, b_j) = 1; the k=2 closed formula is
// lambda = m_1^{-1/b_2}. agreement <=> (c^gen)^{b_2...b_k} = m_1.
std::optional<bool> closed_formula_agreement(const std::vector<int>& m, long base, long gen) {
    Int prod_b(1);
    for (std::size_t j = 1; j < m.size(); ++j) {
        // m_1 = c^{d_1}, m_j = c^{d_j}: m_1^{a_j} = m_j^{b_j} with
        // a_j = d_j/gcd, b_j = d_1/gcd
        long d1 = 0, dj = 0;
        long v = m[0];
        while (v > 1) {
            v /= base;
            ++d1;
        }
        v = m[j];
        while (v > 1) {
            v /= base;
            ++dj;
        }
        long gcd = std::gcd(d1, dj);
        prod_b *= Int(d1 / gcd);
    }
    // lambda = c^{-gen} agrees with m_1^{-1/(prod b_j)} iff c^{gen * prod} = m_1
    if (!prod_b.fits_slong_p()) return std::nullopt;
    Int lhs = int_pow(base, static_cast<unsigned long>(gen * prod_b.get_si()));
    return lhs == Int(m[0]);
}

} // namespace

TypeReport classify_type(GraphPtr g, int periodicity_bound) {
    for (int mi : g->m)
        if (mi < 2) throw domain_error("classify_type: every m_i must be >= 2");
    TypeReport rep;
    rep.lpb = check_little_pullback(*g).lpb;
    IntrinsicGroup ig = intrinsic_group(g->m);
    rep.rankG = ig.rank;
    rep.basis = ig.basis;

    PeriodicityResult per = check_periodicity(g, periodicity_bound);
    if (per.periodic) {
        rep.aperiodic = "false";
        rep.aperiodic_reason = "witness";
        rep.witness = per.witness;
        rep.verdict = Verdict::NotFactor;
        rep.factor_certified = false;
        return rep;
    }
    if (ig.rank == 0) {
        rep.aperiodic = "true";
        rep.aperiodic_reason = "rank0";  // no nonzero candidate degrees exist
    } else if (rep.lpb) {
        rep.aperiodic = "true";
        rep.aperiodic_reason = "lpb";  // little pull-back forces aperiodicity
    } else {
        rep.aperiodic = "unknown";
        rep.aperiodic_reason = "bound=" + std::to_string(periodicity_bound);
    }
    rep.factor_certified = (ig.rank == 0) || rep.lpb;

    SpectrumResult sp = spectrum_generator(g->m);
    if (sp.dense) {
        rep.verdict = Verdict::TypeIII1;
    } else {
        rep.verdict = Verdict::TypeIIILambda;
        rep.lambda_base = sp.base;
        rep.lambda_exp = sp.gen;
        rep.closed_formula_agrees = closed_formula_agreement(g->m, sp.base, sp.gen);
    }
    return rep;
}

std::string verdict_str(const TypeReport& r) {
    switch (r.verdict) {
        case Verdict::NotFactor: return "NotFactor";
        case Verdict::TypeIII1: return "III_1";
        case Verdict::TypeIIILambda: return "III_lambda";
    }
    return "?";
}

} // namespace kgraph
