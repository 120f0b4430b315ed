#pragma once

#include <cstdint>
#include <vector>

#include "surreal/dyadic.hpp"
#include "surreal/value.hpp"

namespace surreal::testkit {

// Reference implementations used by the test suites as independent oracles.
// Nothing in here may call into the cut calculus or the series engine for
// its own answers; the whole point is to disagree when those are wrong.

// All dyadics with birthday <= max_birthday, ascending.  Rejects
// max_birthday > 16 (the count is 2^(b+1) - 1).
std::vector<Dyadic> enumerate_dyadics(int max_birthday);

// First dyadic strictly between every member of left and every member of
// right, found by walking birthdays 0, 1, 2, ... and scanning each level.
// Throws WorkLimitError when no witness exists within max_depth levels.
Dyadic tree_search_simplest(const std::vector<Dyadic>& left,
                            const std::vector<Dyadic>& right,
                            int max_depth);

// Deterministic pseudo-random source for the samplers.  Identical
// configuration must yield the identical sequence, so everything below is
// built on a fixed-algorithm generator and explicit modular draws.
struct SamplerConfig {
    std::uint64_t seed = 1;
    int max_terms = 4;
    int max_exponent_depth = 2;
    int coefficient_bound = 9;
};

// Random normal forms, as finite term lists with hereditarily finite
// exponents drawn from a pool that the exp/log maps accept: integers in
// [-3, 3], dyadics in (0, 1), and shallow w-power terms.  Draws advance a
// fixed 64-bit mixing generator, so a seed pins the whole sequence on
// every platform.
class FragmentSampler {
  public:
    explicit FragmentSampler(SamplerConfig config);

    // Any value, possibly zero.
    Value sample();
    // Nonzero value.
    Value sample_nonzero();
    // No constant term, so exp is defined on it.
    Value sample_exp_ready();
    // All exponents positive.
    Value sample_purely_infinite();
    // All exponents negative.
    Value sample_infinitesimal();
    // Dyadic coefficient draw, for cut tests.
    Dyadic sample_dyadic(int max_birthday);

  private:
    std::uint64_t next();
    long draw(long lo, long hi);  // uniform-ish in [lo, hi]
    Coeff draw_coeff(bool nonzero);
    Value draw_exponent(int depth);
    Value draw_terms(int sign_mode);  // 0 any, 1 positive exps, -1 negative exps

    SamplerConfig config_;
    std::uint64_t state_;
};

}  // namespace surreal::testkit
