#pragma once

#include <vector>

#include "surreal/value.hpp"

namespace surreal {

// The derivation D with kernel the constants, D(w) = 1.  It acts term by
// term, and on monomials through the log derivative:
//   D(w^a) = w^a * sum_j s_j * D(w^(h(b_j)))   for a = sum_j w^(b_j) s_j,
// which bottoms out at D(w^(w^-n)), the iterated-log ladder:
//   D(w^(w^-n)) = w^-(1 + w^-1 + ... + w^-(n-1)),  D(w) = 1.
// Values built on the eps0 atom have no derivative here and raise
// DomainError.

struct DerivationResult {
    Value value;
    bool exact;  // input had known finite support, so the result is complete
};
DerivationResult derive(const Value& x);

// Closed form for D(exp_level(w)): a product of towers for positive levels,
// a single monomial with a nested negative exponent for negative ones.
Value d_log_atomic(int level);

// D(w^f) / w^f; finite whenever it is defined.
Value monomial_log_derivative(const Value& f);

// Antidifferentiation by asymptotic rounds: each round proposes a monomial
// candidate from the residual's leading term, verifies it by deriving it
// back, and subtracts.  exact is set when the residual provably vanishes.
// A first round that cannot make progress raises DomainError; later stalls
// return the partial sum with exact = false.
struct IntegrateResult {
    Value value;
    bool exact;
    int rounds;
};
IntegrateResult asymptotic_integrate(const Value& x, int max_rounds = 8);

// Spot checks of the derivation laws on caller-supplied samples, compared
// up to the given number of leading terms per identity.
struct AxiomReport {
    int pairs = 0;
    int leibniz_failures = 0;
    int additivity_failures = 0;
    int positivity_failures = 0;   // positive infinite x must give D(x) > 0
    int small_failures = 0;        // infinitesimal x must give infinitesimal D(x)
    bool ok() const {
        return leibniz_failures == 0 && additivity_failures == 0 &&
               positivity_failures == 0 && small_failures == 0;
    }
};
AxiomReport check_derivation_axioms(const std::vector<Value>& samples, int depth = 6);

}  // namespace surreal
