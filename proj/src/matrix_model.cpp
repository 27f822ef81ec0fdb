#include "kgraph/matrix_model.hpp"

#include "kgraph/errors.hpp"

namespace kgraph {

CoreMatrixLevel matrix_level(GraphPtr g, int n, long dim_cap) {
    if (n < 0) throw domain_error("matrix_level: n must be >= 0");
    CoreMatrixLevel lvl;
    lvl.n = n;
    Deg nbar(static_cast<std::size_t>(g->k), n);
    lvl.dim = m_pow_long(g->m, nbar, dim_cap);
    lvl.basis = enumerate_level(*g, nbar);
    for (int i = 0; i < static_cast<int>(lvl.basis.size()); ++i) lvl.index.emplace(lvl.basis[static_cast<std::size_t>(i)], i);
    return lvl;
}

RatMatrix to_matrix(const CoreMatrixLevel& lvl, const Elem& a) {
    const KGraph& g = *a.graph;
    RatMatrix mat(static_cast<std::size_t>(lvl.dim), std::vector<Rat>(static_cast<std::size_t>(lvl.dim), Rat(0)));
    if (a.is_zero()) return mat;
    auto it = a.comps.find(deg_zero(g.k));
    if (it == a.comps.end() || a.comps.size() != 1) throw domain_error("to_matrix: element is not in the core");
    const Component& comp = it->second;
    Deg nbar(static_cast<std::size_t>(g.k), lvl.n);
    if (!deg_le(comp.q, nbar)) throw domain_error("to_matrix: element does not lie in this matrix level");
    Deg r = deg_sub(nbar, comp.q);
    for (const auto& [key, c] : comp.terms)
        for (const NormalWord& w : enumerate_level(g, r)) {
            int i = lvl.index.at(concat(g, key.first, w));
            int j = lvl.index.at(concat(g, key.second, w));
            mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += c;
        }
    return mat;
}

Elem matrix_unit(GraphPtr g, const CoreMatrixLevel& lvl, int i, int j) {
    return elem_term(std::move(g), lvl.basis[static_cast<std::size_t>(i)], lvl.basis[static_cast<std::size_t>(j)], Rat(1));
}

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
    std::size_t n = a.size();
    RatMatrix out(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (b[l][j] != 0) out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

Rat mat_trace_normalized(const RatMatrix& a) {
    Rat t(0);
    for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t / Rat(static_cast<long>(a.size()));
}

MatrixModelReport matrix_model_check(GraphPtr g, int n, int samples, unsigned seed, long dim_cap) {
    MatrixModelReport rep;
    CoreMatrixLevel lvl = matrix_level(g, n, dim_cap);
    CoreMatrixLevel nxt = matrix_level(g, n + 1, dim_cap * m_pow_long(g->m, Deg(static_cast<std::size_t>(g->k), 1), dim_cap));

    RatMatrix id = to_matrix(lvl, elem_identity(g));
    for (long i = 0; i < lvl.dim; ++i)
        for (long j = 0; j < lvl.dim; ++j)
            if (id[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != ((i == j) ? Rat(1) : Rat(0))) rep.unit_ok = false;

    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(lvl.dim) - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto random_core = [&]() {
        std::vector<RawTerm> raw;
        for (int t = 0; t < 4; ++t)
            raw.push_back({lvl.basis[static_cast<std::size_t>(pick(rng))], lvl.basis[static_cast<std::size_t>(pick(rng))],
                           Rat(coeff(rng))});
        return make_elem(g, raw);
    };
    for (int s = 0; s < samples; ++s) {
        Elem a = random_core(), b = random_core();
        // product consistency at level n
        RatMatrix lhs = to_matrix(lvl, multiply(a, b));
        RatMatrix rhs = mat_mul(to_matrix(lvl, a), to_matrix(lvl, b));
        if (lhs != rhs) rep.product_ok = false;
        // the embedding F_n -> F_{n+1} is the identity on elements; trace and
        // products must agree between the two matrix pictures
        if (mat_trace_normalized(to_matrix(nxt, a)) != mat_trace_normalized(to_matrix(lvl, a))) rep.embed_trace_ok = false;
        if (to_matrix(nxt, multiply(a, b)) != mat_mul(to_matrix(nxt, a), to_matrix(nxt, b))) rep.embed_product_ok = false;
    }
    return rep;
}

} // namespace kgraph
