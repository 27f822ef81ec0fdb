#include "kgraph/numeric.hpp"

#include <algorithm>
#include <cstdlib>

#include "kgraph/config.hpp"
#include "kgraph/degree.hpp"
#include "kgraph/errors.hpp"

namespace kgraph {

namespace {
std::size_t g_term_budget = 1000000;
}

std::size_t term_budget() { return g_term_budget; }

void set_term_budget(std::size_t n) { g_term_budget = n == 0 ? 1 : n; }

void init_term_budget_from_env() {
    if (const char* env = std::getenv("KGRAPH_MAX_TERMS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) g_term_budget = static_cast<std::size_t>(v);
    }
}

void check_term_budget(std::size_t n, const char* where) {
    if (n > g_term_budget)
        throw resource_error(std::string(where) + ": term budget exceeded (" + std::to_string(n) +
                             " > " + std::to_string(g_term_budget) + ")");
}

Rat rat_parse(const std::string& s) {
    if (s.empty()) throw domain_error("empty rational literal");
    std::string t = s;
    if (t.find('/') == std::string::npos) t += "/1";
    Rat r;
    if (r.set_str(t, 10) != 0) throw domain_error("bad rational literal: " + s);
    if (r.get_den() == 0) throw domain_error("zero denominator: " + s);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

std::string rat_decimal(const Rat& r, int digits) {
    Int num = r.get_num();
    Int den = r.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    Int ip = num / den;
    Int rem = num % den;
    std::string out = (neg && (ip != 0 || rem != 0)) ? "-" : "";
    out += ip.get_str();
    if (digits > 0) {
        out += '.';
        for (int i = 0; i < digits; ++i) {
            rem *= 10;
            Int d = rem / den;
            rem = rem % den;
            out += d.get_str();
        }
    }
    return out;
}

double rat_double(const Rat& r) { return r.get_d(); }

Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    bool invert = e < 0;
    unsigned long n = static_cast<unsigned long>(invert ? -e : e);
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num().get_mpz_t(), n);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den().get_mpz_t(), n);
    out.canonicalize();
    if (invert) {
        if (out == 0) throw domain_error("rat_pow: zero base with negative exponent");
        out = Rat(1) / out;
    }
    return out;
}

Int int_pow(long base, unsigned long e) {
    Int out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
    return out;
}

bool deg_nonneg(const Deg& a) {
    for (int x : a)
        if (x < 0) return false;
    return true;
}

bool deg_is_zero(const Deg& a) {
    for (int x : a)
        if (x != 0) return false;
    return true;
}

bool deg_le(const Deg& a, const Deg& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Deg deg_add(const Deg& a, const Deg& b) {
    Deg out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Deg deg_sub(const Deg& a, const Deg& b) {
    Deg out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Deg deg_join(const Deg& a, const Deg& b) {
    Deg out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
    return out;
}

Deg deg_meet(const Deg& a, const Deg& b) {
    Deg out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
    return out;
}

Deg deg_pos(const Deg& a) {
    Deg out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] > 0 ? a[i] : 0;
    return out;
}

Deg deg_neg(const Deg& a) {
    Deg out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] < 0 ? -a[i] : 0;
    return out;
}

Deg deg_negate(const Deg& a) {
    Deg out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

int deg_total(const Deg& a) {
    int s = 0;
    for (int x : a) s += x;
    return s;
}

int deg_linf(const Deg& a) {
    int s = 0;
    for (int x : a) s = std::max(s, x < 0 ? -x : x);
    return s;
}

Deg deg_scale(const Deg& a, int t) {
    Deg out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * t;
    return out;
}

Rat m_pow(const std::vector<int>& m, const Deg& p) {
    Rat out(1);
    for (std::size_t i = 0; i < m.size(); ++i) out *= rat_pow(Rat(m[i]), p[i]);
    return out;
}

Int m_pow_int(const std::vector<int>& m, const Deg& p) {
    Int out(1);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (p[i] < 0) throw domain_error("m_pow_int: negative exponent");
        out *= int_pow(m[i], static_cast<unsigned long>(p[i]));
    }
    return out;
}

long m_pow_long(const std::vector<int>& m, const Deg& p, long cap) {
    long out = 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (p[i] < 0) throw domain_error("m_pow_long: negative exponent");
        for (int e = 0; e < p[i]; ++e) {
            out *= m[i];
            if (out > cap) throw resource_error("m^p exceeds configured cap");
        }
    }
    return out;
}

} // namespace kgraph
