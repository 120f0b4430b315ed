#pragma once

#include <optional>

#include "surreal/value.hpp"

namespace surreal {

// exp and log on normal forms.  Writing x = J + c + eps (purely infinite,
// constant, infinitesimal), exp(x) is supported when c = 0: the purely
// infinite part maps through g exponent by exponent, and exp(eps) is the
// usual power series.  A nonzero constant would need exp(c), which is not
// rational, so it raises DomainError.  log mirrors this through h and asks
// for a leading coefficient of exactly 1.

enum class Tri { Yes, No, Undecided };

// exp(eps) for infinitesimal eps.
Value taylor_exp_infinitesimal(const Value& eps);

// log(1 + eps) for infinitesimal eps.
Value taylor_log_unit(const Value& eps);

// The exponent maps: exp(sum w^(a_i) r_i) = w^(sum w^(g(a_i)) r_i) and
// log(w^(sum w^(b_j) s_j)) = sum w^(h(b_j)) s_j.  Supported arguments:
//   g: dyadic constants in (0,1) (fixed), w^-k with coefficient 1 (maps to
//      1-k), anything in [1, eps0) (fixed), eps0 (maps to eps0 + 1), and
//      anything at or above eps0 + w (fixed).
//   h: the inverse ranges; in particular h(0) = w^-1 and h(-n) = w^-(n+1).
// Everything else raises DomainError.
Value g_map(const Value& a);
Value h_map(const Value& b);

Value exp_nf(const Value& x);
Value log_nf(const Value& x);

// exp_n(w): level 0 is w, positive levels are towers w^w^..., negative
// levels are iterated logs w^(w^-n).  |n| is capped at 30.
Value lambda_of_level(int n);

// Recognizes exactly the values lambda_of_level produces.
std::optional<int> log_atomic_level(const Value& v);

// Purely infinite part of log(x), for positive x with a leading coefficient
// that need not be 1; the dropped parts are finite, which the asymptotic
// class tests below can afford to ignore.
Value log_mod_finite(const Value& x);

// Both tests take positive infinite arguments and may answer Undecided.
// same_level: do finitely many logs bring x and y into the same
// archimedean class?  same_explog_class: is each side below some finite
// exp-tower over the other?
Tri same_level(const Value& x, const Value& y);
Tri same_explog_class(const Value& x, const Value& y);

}  // namespace surreal
