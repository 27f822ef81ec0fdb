#pragma once

#include <optional>
#include <string>

#include "kgraph/lattice.hpp"
#include "kgraph/periodicity.hpp"

namespace kgraph {

enum class Verdict { NotFactor, TypeIII1, TypeIIILambda };

struct TypeReport {
    // "true" | "false" | "unknown"; a witness or a reason accompanies it
    std::string aperiodic;
    std::string aperiodic_reason;  // "rank0" | "lpb" | "witness" | "bound=N"
    std::optional<PeriodicityWitness> witness;
    bool lpb = false;
    int rankG = 0;
    std::vector<Deg> basis;
    bool factor_certified = false;
    Verdict verdict = Verdict::TypeIII1;
    long lambda_base = 0;  // lambda = base^{-exp} when verdict == TypeIIILambda
    long lambda_exp = 0;
    // For rank k-1: whether lambda agrees with m_1^{-1/(b_2...b_k)}; the
    // generator computed from cl{m^n} is authoritative.
    std::optional<bool> closed_formula_agrees;
};

TypeReport classify_type(GraphPtr g, int periodicity_bound);

std::string verdict_str(const TypeReport& r);

} // namespace kgraph
