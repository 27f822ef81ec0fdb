#pragma once

#include <cstdint>
#include <optional>

#include "kgraph/algebra.hpp"
#include "kgraph/matrix_model.hpp"

namespace kgraph {

// Cuntz-type representation: per-edge images satisfying the orthogonality,
// defect-free and theta-commutation relations.  The standard tuple is E_e =
// s_e; gamma_image(r) is E_e = gamma_r(s_e).
struct CuntzTuple {
    GraphPtr graph;
    std::optional<Deg> gamma_level;  // set when E = gamma_r(s)
    std::map<Edge, Elem> rep;

    static CuntzTuple standard(GraphPtr g);
    static CuntzTuple gamma_image(GraphPtr g, const Deg& r);
    static CuntzTuple from_rep(GraphPtr g, std::map<Edge, Elem> rep);

    Elem word_image(const NormalWord& w) const;
};

struct CuntzCheck {
    bool ok = true;
    std::string detail;
};
CuntzCheck verify_cuntz(const CuntzTuple& e);

// gamma_p^E(A) = sum_{w in Lambda^p} E_w A E_w*.
Elem gamma_endo(const CuntzTuple& e, const Deg& p, const Elem& a);

// U_(f,sigma) = sum_{w in Lambda^p} (-1)^{f(w)} E_{sigma(w)} E_w*, with f and
// sigma indexed against the lex enumeration of Lambda^p.
struct AveragingUnitarySpec {
    Deg p;
    std::vector<std::uint8_t> f;
    std::vector<int> sigma;
};
Elem averaging_unitary(const CuntzTuple& e, const AveragingUnitarySpec& spec);

// Exact average over all 2^{m^p} (m^p)! unitaries U_(f,sigma); the oracle
// for alpha_closed. Throws resource_error past `cap` unitaries.
Elem alpha_brute(const CuntzTuple& e, const Deg& p, const Elem& a, unsigned long cap = 500);

// Closed-form alpha_p for the standard tuple: L:2basic shapes after
// defect-free refinement.  Returns y with alpha_p(x) = gamma_p(y).
Elem alpha_closed_lifted(GraphPtr g, const Deg& p, const Elem& x);

// alpha_p(x) for the standard tuple, expanded.
Elem alpha_closed(GraphPtr g, const Deg& p, const Elem& x);

// General tuple variant; for gamma-image tuples the argument must be a
// gamma_r image (shape error otherwise).
Elem alpha_closed_tuple(const CuntzTuple& e, const Deg& p, const Elem& a);

struct IntrinsicUnitary {
    Deg gvec;
    std::vector<int> pairing;  // Lambda^{g+}[i] |-> Lambda^{g-}[pairing[i]]
    Elem element;
};
IntrinsicUnitary build_intrinsic_unitary(GraphPtr g, const Deg& gvec, const std::vector<int>* pairing = nullptr);

struct ScheduleStep {
    std::string kind;   // "alpha_q" | "alpha_p_level" | "matrix_dixmier"
    Deg p;              // averaging degree (alpha steps)
    Deg tuple_level;    // r with E = gamma_r(s) (alpha steps)
    int matrix_level = 0;  // core level n (matrix step)
};

struct AveragingSchedule {
    std::vector<ScheduleStep> steps;
    Rat residual_bound = Rat(0);
};

struct ShrinkResult {
    AveragingSchedule schedule;
    Elem result;          // exact element after the schedule, = gamma_{lifted_level}(lifted)
    Elem lifted;          // lifted representative; gamma is isometric, so its
                          // coefficient 1-norm bounds the result's norm
    Deg lifted_level;
    Rat coeff_sum;        // sum |a_uv| after the alpha_q stage
    Deg contraction_p;
    int levels = 0;
};

// Certified contraction of a homogeneous off-diagonal element below eps,
// with the rational bound m^{-Np} * coeff_sum.  Requires the little
// pull-back property. `forced_levels` >= 0 overrides the computed N (tests).
ShrinkResult shrink_offdiagonal(GraphPtr g, const Elem& a, const Rat& eps, int forced_levels = -1);

struct DixmierResult {
    Rat scalar;
    AveragingSchedule schedule;
    Deg final_level;    // r: the actual final element is gamma_r(final_lifted)
    Elem final_lifted;  // lifted representative after all steps
};

// Full averaging pipeline: kills every nonzero-degree component below
// eps / L, then averages the core part exactly to omega(A) I inside a matrix
// level. scalar == omega(A) exactly.
DixmierResult dixmier_average(GraphPtr g, const Elem& a, const Rat& eps);

struct ReplayReport {
    bool confirmed = true;
    std::string detail;
};

// Re-executes a schedule on `a` and re-verifies the recorded scalar and
// residual bound.
ReplayReport replay_schedule(GraphPtr g, const Elem& a, const AveragingSchedule& sched, const Rat& eps,
                             const Rat& scalar);

} // namespace kgraph
