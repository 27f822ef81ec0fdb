#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgraph/word.hpp"

namespace kgraph {

// One homogeneous (degree-n) component in bidegree-uniform canonical form:
// every stored term s_u s_v* has d(u) = p, d(v) = q, p - q = n.  The
// canonical form is fully reduced: no colour can be stripped from all terms
// simultaneously via the defect-free relation.
struct Component {
    Deg p, q;
    std::map<std::pair<NormalWord, NormalWord>, Rat> terms;

    bool operator==(const Component& o) const { return p == o.p && q == o.q && terms == o.terms; }
};

// Finite exact-coefficient element of the algebraic part spanned by the
// s_u s_v*.  Maps are keyed by the degree n = d(u) - d(v), so iteration and
// serialization order are deterministic.
struct Elem {
    GraphPtr graph;
    std::map<Deg, Component> comps;

    bool is_zero() const { return comps.empty(); }
    bool is_homogeneous() const { return comps.size() <= 1; }
};

struct RawTerm {
    NormalWord u, v;
    Rat c;
};

Elem elem_zero(GraphPtr g);
Elem elem_identity(GraphPtr g);
Elem elem_word(GraphPtr g, const NormalWord& u);                          // s_u
Elem elem_term(GraphPtr g, const NormalWord& u, const NormalWord& v, Rat c);

// Groups terms by degree, refines every group to its common bidegree,
// merges, drops zeros and reduces to the minimal bidegree.  The result is
// the unique canonical form: two elements are equal iff their canonical
// forms are identical.
Elem make_elem(GraphPtr g, const std::vector<RawTerm>& raw);

std::vector<RawTerm> elem_terms(const Elem& a);

Elem add(const Elem& a, const Elem& b);
Elem sub(const Elem& a, const Elem& b);
Elem scale(const Elem& a, const Rat& c);
Elem multiply(const Elem& a, const Elem& b);
Elem adjoint(const Elem& a);
bool elem_equal(const Elem& a, const Elem& b);
std::size_t term_count(const Elem& a);

// Degree-n spectral component Phi_n(A); Phi_0 is the expectation onto the core.
Elem spectral_component(const Elem& a, const Deg& n);

// omega(s_u s_v*) = delta_{u,v} m^{-d(u)}, extended linearly. Exact.
Rat omega(const Elem& a);

// gamma_r(A) = sum_{w in Lambda^r} s_w A s_w* for the standard generators.
Elem gamma_std(const Elem& a, const Deg& r);

// If a = gamma_r(x) for some x, recovers x; otherwise nullopt.
std::optional<Elem> gamma_unlift(const Elem& a, const Deg& r);

// Modular data as symbolic phase/scale actions.
Elem modular_delta_z(const Elem& a, long z);      // Delta^z, integer z (exact)
Elem modular_tomita_S(const Elem& a);             // S(A) = A*
Elem modular_tomita_F(const Elem& a);             // F(s_u s_v*) = m^{d(u)-d(v)} s_v s_u*
Elem modular_conj_J(const Elem& a);               // J, exact only for even degree differences
struct PhasePart {
    Deg exponent;  // sigma_t scales this part by m^{it * exponent}
    Elem part;
};
std::vector<PhasePart> modular_sigma_symbolic(const Elem& a);
double modular_scale(const std::vector<int>& m, const Deg& n, double z);  // float mode helper

struct KmsViolation {
    Deg na, nb;
    Rat lhs, rhs;
};
struct KmsReport {
    bool holds = true;
    std::optional<KmsViolation> violation;
};
// Exact check of omega(AB) = m^{d(B)} omega(BA), per homogeneous pair.
KmsReport kms_check(const Elem& a, const Elem& b);

struct NormBounds {
    double lower = 0;
    double upper = 0;
};
// Per component the operator norm is the largest singular value of the
// coefficient matrix; lower = max over components, upper = sum.
NormBounds norm_bounds(const Elem& a);

// Exact coefficient 1-norm bounds: per component sum of |coefficients| is an
// upper bound for its operator norm; returns the sum over components.
Rat norm_upper_coeff(const Elem& a);

} // namespace kgraph
