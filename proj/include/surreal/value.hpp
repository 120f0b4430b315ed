#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "surreal/common.hpp"
#include "surreal/ordinal.hpp"

namespace surreal {

// Normal forms: sums of w^exp * coeff with strictly decreasing exponents,
// where each exponent is itself a (smaller) normal form.  A value is either
// a materialized finite term list, a lazy stream of terms, or the eps0 atom,
// which expands on demand to the single term w^eps0 * 1.
//
// Streams answer term requests with one of three statuses.  Got hands back
// an exact term, End certifies the support is exhausted, Unknown means the
// generator hit its work cap before it could decide.  Unknown is sticky for
// a given stream: the caps are deterministic, so asking again cannot help.

using Coeff = Rational;

class Value;
struct Term;

enum class TermStatus { Got, End, Unknown };

namespace detail {
struct Node;
struct StreamState;
}  // namespace detail

class Value {
  public:
    Value();  // zero

    static Value zero();
    static Value one();
    static Value omega();
    static Value eps0();
    static Value from_rational(const Coeff& c);
    static Value from_int(long v);
    static Value monomial(const Value& exp, const Coeff& coeff);
    static Value from_terms(std::vector<Term> terms);

    bool is_eps0_atom() const;
    bool known_finite() const;  // finite term list or the atom; never a stream
    bool is_zero() const;       // structurally zero (empty finite list)

    struct Fetch {
        TermStatus status;
        const Term* term;  // valid iff status == Got; owned by the value
    };
    Fetch fetch(std::size_t i) const;

    struct TakeResult {
        std::vector<Term> terms;
        bool complete;  // support proven to end within the first k terms
        bool unknown;   // ran into an Unknown answer
    };
    TakeResult take(std::size_t k) const;

    // Structural hash; hereditarily finite values only.
    std::uint64_t hash() const;

  private:
    explicit Value(std::shared_ptr<const detail::Node> node);
    std::shared_ptr<const detail::Node> node_;
    friend Value stream_value(std::shared_ptr<detail::StreamState> s);
};

struct Term {
    Value exp;   // hereditarily finite
    Coeff coeff; // nonzero
};

// Total order on hereditarily finite values (lexicographic on terms).
Ordering compare_exact(const Value& a, const Value& b);
bool equal_exact(const Value& a, const Value& b);

// Budgeted comparison for values with stream parts.  EQ is only reported
// when both supports are proven exhausted; agreement up to the budget or an
// Unknown answer yields UNDECIDED.
enum class CompareResult { LT, EQ, GT, UNDECIDED };
CompareResult nf_compare(const Value& a, const Value& b, int budget = 64);

// Lenient prefix comparison: ok stays true unless a disagreement is proven
// (mismatched term, or a term against a proven End).  compared counts the
// term pairs checked, so callers can reject vacuous successes.
struct PrefixCheck {
    bool ok;
    int compared;
    bool complete;  // both ended within the first k terms
};
PrefixCheck prefix_equal(const Value& a, const Value& b, int k);

Value nf_add(const Value& a, const Value& b);
Value nf_sub(const Value& a, const Value& b);
Value nf_neg(const Value& a);
Value nf_mul(const Value& a, const Value& b);
Value nf_scale(const Value& a, const Coeff& coeff);
// a * w^exp * coeff, term by term.
Value nf_scale_monomial(const Value& a, const Value& exp, const Coeff& coeff);

// Long division.  Quotients come out as streams unless a fast exact path
// applies; an exact quotient is detected when the remainder proves zero.
Value nf_invert(const Value& x, int budget = 20);
Value nf_div(const Value& x, const Value& y, int budget = 20);

inline Value operator+(const Value& a, const Value& b) { return nf_add(a, b); }
inline Value operator-(const Value& a, const Value& b) { return nf_sub(a, b); }
inline Value operator-(const Value& a) { return nf_neg(a); }
inline Value operator*(const Value& a, const Value& b) { return nf_mul(a, b); }

// w^a as a value; a must be hereditarily finite.
Value omega_map(const Value& a);

Value embed_ordinal(const OrdinalCNF& o);

// x = purely_infinite + constant + infinitesimal.
struct Decomposition {
    Value purely_infinite;
    Coeff constant;
    Value infinitesimal;
};
Decomposition additive_decompose(const Value& x);

// x = w^leading_exponent * leading_coeff * (1 + unit_tail), x != 0.
struct MultDecomposition {
    Value leading_exponent;
    Coeff leading_coeff;
    Value unit_tail;  // infinitesimal
};
MultDecomposition multiplicative_decompose(const Value& x);

// Archimedean comparison by leading monomial; both arguments nonzero.
enum class AsymptoticRelation { Prec, AsympEq, Sim, Succ };
AsymptoticRelation archimedean_relate(const Value& x, const Value& y);

// Wraps a raw generator as a value.  The callback returns terms with
// strictly decreasing exponents and nullopt at the end of the support; it
// throws WorkLimitError to answer Unknown.
Value sum_of_stream(std::function<std::optional<Term>()> next,
                    bool known_finite = false);

// Merged sum of the family summand(0), summand(1), ...; the nonzero
// summands must have strictly decreasing leading exponents.  nullopt ends
// the family.
Value ladder_sum(std::function<std::optional<Value>(std::size_t)> summand);

// sum_k coeff(k) * eps^k for an infinitesimal eps.
Value compose_series(std::function<Coeff(std::size_t)> coeff, const Value& eps);

// Exact rational root; nullopt when none exists (or the order is invalid).
std::optional<Rational> rational_nth_root(const Rational& r, int n);

// Exact n-th root of values whose leading coefficient has one.
Value nth_root(const Value& x, int n);

}  // namespace surreal
