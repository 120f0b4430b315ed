#include "surreal/explog.hpp"

#include "surreal/dyadic.hpp"

namespace surreal {

namespace {

constexpr int kMaxLevel = 30;
constexpr int kClassIterCap = 34;
constexpr std::size_t kInfinitePartCap = 256;

// Full term list of a value whose support must prove finite.
std::vector<Term> complete_terms(const Value& v, const char* who) {
    std::vector<Term> out;
    for (std::size_t i = 0;; ++i) {
        if (i > kInfinitePartCap)
            throw WorkLimitError(std::string(who) + ": too many terms to collect");
        Value::Fetch f = v.fetch(i);
        if (f.status == TermStatus::End) return out;
        if (f.status == TermStatus::Unknown)
            throw WorkLimitError(std::string(who) +
                                 ": support not proven finite");
        out.push_back(*f.term);
    }
}

const Value& value_one() {
    static const Value v = Value::one();
    return v;
}

const Value& eps0_plus_one() {
    static const Value v = nf_add(Value::eps0(), Value::one());
    return v;
}

const Value& eps0_plus_omega() {
    static const Value v = nf_add(Value::eps0(), Value::omega());
    return v;
}

// The single term of a constant or monomial argument, if it has one.
std::optional<Term> sole_term(const Value& v) {
    Value::Fetch f0 = v.fetch(0);
    if (f0.status != TermStatus::Got) return std::nullopt;
    if (v.fetch(1).status != TermStatus::End) return std::nullopt;
    return *f0.term;
}

std::optional<long> as_integer_constant(const Value& v) {
    if (v.is_zero()) return 0;
    std::optional<Term> t = sole_term(v);
    if (!t || !t->exp.is_zero()) return std::nullopt;
    if (boost::multiprecision::denominator(t->coeff) != 1) return std::nullopt;
    return static_cast<long>(boost::multiprecision::numerator(t->coeff));
}

bool positive_infinite(const Value& x) {
    Value::Fetch f = x.fetch(0);
    if (f.status != TermStatus::Got) return false;
    return f.term->coeff > 0 &&
           compare_exact(f.term->exp, Value::zero()) == Ordering::Greater;
}

// True when the leading-exponent chain climbs to the eps0 atom through
// positive coefficients; such values sit above every finite tower, while
// eps0-free values all sit below one.
bool eps0_in_lead(const Value& v) {
    if (v.is_eps0_atom()) return true;
    Value::Fetch f = v.fetch(0);
    if (f.status != TermStatus::Got) return false;
    if (f.term->coeff < 0) return false;
    return eps0_in_lead(f.term->exp);
}

}  // namespace

Value taylor_exp_infinitesimal(const Value& eps) {
    return compose_series(
        [](std::size_t k) {
            Coeff c(1);
            for (std::size_t i = 1; i <= k; ++i) c /= static_cast<long>(i);
            return c;
        },
        eps);
}

Value taylor_log_unit(const Value& eps) {
    return compose_series(
        [](std::size_t k) {
            if (k == 0) return Coeff(0);
            Coeff c(1, static_cast<long>(k));
            return k % 2 == 0 ? Coeff(-c) : c;
        },
        eps);
}

Value g_map(const Value& a) {
    if (!a.known_finite()) throw DomainError("g: argument must be hereditarily finite");
    if (compare_exact(a, Value::zero()) != Ordering::Greater)
        throw DomainError("g: argument must be positive");
    Ordering vs_one = compare_exact(a, value_one());
    if (vs_one != Ordering::Less) {
        Ordering vs_eps0 = compare_exact(a, Value::eps0());
        if (vs_eps0 == Ordering::Less) return a;
        if (vs_eps0 == Ordering::Equal) return eps0_plus_one();
        if (compare_exact(a, eps0_plus_omega()) != Ordering::Less) return a;
        throw DomainError("g: arguments between eps0 and eps0 + w are unsupported");
    }
    // 0 < a < 1: a dyadic constant, or w^-k with coefficient 1.
    std::optional<Term> t = sole_term(a);
    if (t) {
        if (t->exp.is_zero()) {
            if (Dyadic::from_rational(t->coeff)) return a;
            throw DomainError("g: constant " + t->coeff.str() + " is not dyadic");
        }
        std::optional<Term> e = sole_term(t->exp);
        if (e && t->coeff == 1 && e->exp.is_zero() && e->coeff < 0 &&
            boost::multiprecision::denominator(e->coeff) == 1) {
            long k = static_cast<long>(boost::multiprecision::numerator(e->coeff));
            return Value::from_int(1 + k);  // g(w^-k) = 1 - k
        }
    }
    throw DomainError("g: unsupported argument below 1");
}

Value h_map(const Value& b) {
    if (!b.known_finite()) throw DomainError("h: argument must be hereditarily finite");
    Ordering vs_one = compare_exact(b, value_one());
    if (vs_one != Ordering::Less) {
        Ordering vs_eps0 = compare_exact(b, Value::eps0());
        if (vs_eps0 == Ordering::Less) return b;
        if (vs_eps0 == Ordering::Equal)
            throw DomainError("h: log of eps0 leaves the fragment");
        if (equal_exact(b, eps0_plus_one())) return Value::eps0();
        if (compare_exact(b, eps0_plus_omega()) != Ordering::Less) return b;
        throw DomainError("h: arguments between eps0 and eps0 + w are unsupported");
    }
    // Integers <= 0: h(1-k) = w^-k.
    std::optional<Term> t = sole_term(b);
    if (b.is_zero() || (t && t->exp.is_zero())) {
        Coeff c = b.is_zero() ? Coeff(0) : t->coeff;
        if (boost::multiprecision::denominator(c) == 1 && c <= 0) {
            long n = static_cast<long>(boost::multiprecision::numerator(c));
            return Value::monomial(Value::from_int(n - 1), Coeff(1));
        }
        if (c > 0 && Dyadic::from_rational(c)) return b;  // dyadic in (0,1)
        throw DomainError("h: constant " + c.str() + " is outside the supported range");
    }
    throw DomainError("h: unsupported argument below 1");
}

Value exp_nf(const Value& x) {
    Decomposition d = additive_decompose(x);
    if (d.constant != 0)
        throw DomainError("exp: exp(" + d.constant.str() +
                          ") is not rational; only a zero constant part is supported");
    std::vector<Term> infinite = complete_terms(d.purely_infinite, "exp");
    std::vector<Term> mapped;
    mapped.reserve(infinite.size());
    for (const Term& t : infinite) mapped.push_back(Term{g_map(t.exp), t.coeff});
    Value tower_exp = Value::from_terms(std::move(mapped));
    Value small = taylor_exp_infinitesimal(d.infinitesimal);
    if (tower_exp.is_zero()) return small;
    return nf_mul(omega_map(tower_exp), small);
}

Value log_nf(const Value& x) {
    MultDecomposition d = multiplicative_decompose(x);
    if (d.leading_coeff != 1)
        throw DomainError("log: log(" + d.leading_coeff.str() +
                          ") is not rational; the leading coefficient must be 1");
    std::vector<Term> mapped;
    for (const Term& t : complete_terms(d.leading_exponent, "log"))
        mapped.push_back(Term{h_map(t.exp), t.coeff});
    Value head = Value::from_terms(std::move(mapped));
    return nf_add(head, taylor_log_unit(d.unit_tail));
}

Value lambda_of_level(int n) {
    if (n > kMaxLevel || n < -kMaxLevel)
        throw DomainError("lambda: level out of range");
    if (n < 0) return Value::monomial(Value::monomial(Value::from_int(n), Coeff(1)), Coeff(1));
    Value v = Value::omega();
    for (int i = 0; i < n; ++i) v = omega_map(v);
    return v;
}

std::optional<int> log_atomic_level(const Value& v) {
    // The eps0 atom expands to a term whose exponent is the atom again, so the
    // structural descent below would never terminate on it.
    if (v.is_eps0_atom()) return std::nullopt;
    std::optional<Term> t = sole_term(v);
    if (!t || t->coeff != 1) return std::nullopt;
    if (as_integer_constant(t->exp) == 1) return 0;  // w itself
    std::optional<Term> e = sole_term(t->exp);
    if (e && e->coeff == 1) {
        std::optional<long> m = as_integer_constant(e->exp);
        if (m && *m <= -1 && *m >= -kMaxLevel) return static_cast<int>(*m);  // w^(w^m)
    }
    std::optional<int> inner = log_atomic_level(t->exp);
    if (inner && *inner >= 0 && *inner < kMaxLevel) return *inner + 1;
    return std::nullopt;
}

Value log_mod_finite(const Value& x) {
    Value::Fetch f = x.fetch(0);
    if (f.status != TermStatus::Got)
        throw DomainError("log_mod_finite: needs a resolvable nonzero argument");
    if (f.term->coeff < 0)
        throw DomainError("log_mod_finite: argument must be positive");
    std::vector<Term> mapped;
    for (const Term& t : complete_terms(f.term->exp, "log_mod_finite"))
        mapped.push_back(Term{h_map(t.exp), t.coeff});
    return Value::from_terms(std::move(mapped));
}

Tri same_level(const Value& x, const Value& y) {
    if (!positive_infinite(x) || !positive_infinite(y))
        throw DomainError("same_level: arguments must be positive infinite");
    if (eps0_in_lead(x) != eps0_in_lead(y)) return Tri::No;
    Value lx = x, ly = y;
    for (int k = 0; k <= kClassIterCap; ++k) {
        Value::Fetch fx = lx.fetch(0);
        Value::Fetch fy = ly.fetch(0);
        if (fx.status != TermStatus::Got || fy.status != TermStatus::Got)
            return Tri::Undecided;
        if (equal_exact(fx.term->exp, fy.term->exp)) return Tri::Yes;
        std::optional<int> ax = log_atomic_level(Value::monomial(fx.term->exp, Coeff(1)));
        std::optional<int> ay = log_atomic_level(Value::monomial(fy.term->exp, Coeff(1)));
        if (ax && ay) return *ax == *ay ? Tri::Yes : Tri::No;
        try {
            lx = log_mod_finite(lx);
            ly = log_mod_finite(ly);
        } catch (const Error&) {
            return Tri::Undecided;
        }
    }
    return Tri::Undecided;
}

Tri same_explog_class(const Value& x, const Value& y) {
    if (!positive_infinite(x) || !positive_infinite(y))
        throw DomainError("same_explog_class: arguments must be positive infinite");
    if (eps0_in_lead(x) != eps0_in_lead(y)) return Tri::No;
    Value lx = x, ly = y;
    for (int k = 0; k <= kClassIterCap; ++k) {
        CompareResult cx = nf_compare(lx, y, 48);
        CompareResult cy = nf_compare(ly, x, 48);
        if (cx == CompareResult::LT && cy == CompareResult::LT) return Tri::Yes;
        try {
            lx = log_mod_finite(lx);
            ly = log_mod_finite(ly);
        } catch (const Error&) {
            return Tri::Undecided;
        }
    }
    return Tri::Undecided;
}

}  // namespace surreal
