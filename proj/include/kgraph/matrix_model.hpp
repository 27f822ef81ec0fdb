#pragma once

#include <random>

#include "kgraph/algebra.hpp"

namespace kgraph {

// Matrix-unit picture of the core level F_n = span{s_u s_v* : d(u)=d(v)=(n,..,n)},
// a full matrix algebra of dimension prod_i m_i^n.
struct CoreMatrixLevel {
    int n = 0;
    long dim = 0;
    std::vector<NormalWord> basis;        // Lambda^{n bar}, lex order
    std::map<NormalWord, int> index;
};

using RatMatrix = std::vector<std::vector<Rat>>;

CoreMatrixLevel matrix_level(GraphPtr g, int n, long dim_cap = 4096);

// Requires a in F_n (single degree-0 component with bidegree <= (n bar, n bar)).
RatMatrix to_matrix(const CoreMatrixLevel& lvl, const Elem& a);

Elem matrix_unit(GraphPtr g, const CoreMatrixLevel& lvl, int i, int j);

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);
Rat mat_trace_normalized(const RatMatrix& a);

struct MatrixModelReport {
    bool product_ok = true;      // sampled pairs: matrix product == symbolic multiply
    bool embed_trace_ok = true;  // tau_{n+1}(embed X) == tau_n(X)
    bool embed_product_ok = true;
    bool unit_ok = true;         // I maps to the identity matrix
};

MatrixModelReport matrix_model_check(GraphPtr g, int n, int samples, unsigned seed, long dim_cap = 4096);

} // namespace kgraph
