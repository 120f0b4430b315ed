#include "doctest.h"

#include <vector>

#include "surreal/derivation.hpp"
#include "surreal/explog.hpp"
#include "surreal/testkit.hpp"

using namespace surreal;

namespace {

Value wpow(long n) { return Value::monomial(Value::from_int(n), 1); }

// 1/(w log w ... log_{n-1} w) written directly as a monomial
Value iterated_log_derivative(int n) {
    std::vector<Term> exps;
    for (int k = 0; k > -n; --k) exps.push_back(Term{Value::from_int(k), Rational(-1)});
    return Value::monomial(Value::from_terms(std::move(exps)), 1);
}

}  // namespace

TEST_CASE("the derivation fixes its kernel and sends w to 1") {
    CHECK(derive(Value::zero()).value.is_zero());
    CHECK(derive(Value::from_rational(Rational(7, 2))).value.is_zero());
    DerivationResult r = derive(Value::omega());
    CHECK(r.exact);
    CHECK(equal_exact(r.value, Value::one()));
    CHECK(equal_exact(derive(Value::omega() + Value::from_int(5)).value, Value::one()));
}

TEST_CASE("monomial derivatives in closed form") {
    CHECK(equal_exact(derive(wpow(2)).value, nf_scale(Value::omega(), Rational(2))));
    CHECK(equal_exact(derive(wpow(-1)).value, nf_scale(wpow(-2), Rational(-1))));
    CHECK(equal_exact(derive(wpow(3)).value, nf_scale(wpow(2), Rational(3))));
    // d(w^w) = w^w since the log derivative of w^w is exactly 1... times d(w)
    CHECK(equal_exact(derive(Value::monomial(Value::omega(), 1)).value,
                      Value::monomial(Value::omega(), 1)));
}

TEST_CASE("derivatives of the iterated logs") {
    for (int n = 1; n <= 5; ++n) {
        Value log_n = lambda_of_level(-n);
        Value expect = iterated_log_derivative(n);
        DerivationResult r = derive(log_n);
        REQUIRE(r.exact);
        REQUIRE(equal_exact(r.value, expect));
        REQUIRE(equal_exact(d_log_atomic(-n), expect));
    }
    CHECK(equal_exact(d_log_atomic(0), Value::one()));
}

TEST_CASE("derivatives of the exp towers") {
    for (int n = 1; n <= 5; ++n) {
        // d(exp_n(w)) = exp_n(w) * exp_{n-1}(w) * ... * exp_1(w) * 1
        Value expect = Value::one();
        for (int k = 1; k <= n; ++k) expect = expect * lambda_of_level(k);
        DerivationResult r = derive(lambda_of_level(n));
        REQUIRE(r.exact);
        REQUIRE(equal_exact(r.value, expect));
        REQUIRE(equal_exact(d_log_atomic(n), expect));
    }
}

TEST_CASE("the derivation lives on the eps0-free fragment") {
    CHECK_THROWS_AS(derive(Value::eps0()), DomainError);
    CHECK_THROWS_AS(derive(Value::eps0() + Value::omega()), DomainError);
    CHECK_THROWS_AS(d_log_atomic(31), DomainError);
}

TEST_CASE("monomial log derivative feeds the product rule") {
    // D(w^a)/w^a for a = w^2*3: 3 terms of b=2 map through h
    Value f = nf_scale(wpow(2), Rational(3));
    Value ld = monomial_log_derivative(f);
    // log w^(w^2*3) = w^2*3 log-derives to 3 * D(w^2) = 6w
    CHECK(equal_exact(ld, nf_scale(Value::omega(), Rational(6))));
}

TEST_CASE("leibniz and additivity hold exactly on finite samples") {
    testkit::SamplerConfig cfg;
    cfg.seed = 13;
    testkit::FragmentSampler sampler(cfg);
    for (int i = 0; i < 20; ++i) {
        Value x = sampler.sample();
        Value y = sampler.sample();
        Value dx = derive(x).value;
        Value dy = derive(y).value;
        REQUIRE(prefix_equal(derive(x + y).value, dx + dy, 10).ok);
        REQUIRE(prefix_equal(derive(x * y).value, dx * y + x * dy, 10).ok);
    }
}

TEST_CASE("the derivation is compatible with exp") {
    testkit::SamplerConfig cfg;
    cfg.seed = 17;
    testkit::FragmentSampler sampler(cfg);
    for (int i = 0; i < 8; ++i) {
        Value x = sampler.sample_purely_infinite();
        Value ex = exp_nf(x);
        auto pc = prefix_equal(derive(ex).value, ex * derive(x).value, 6);
        REQUIRE(pc.ok);
        REQUIRE(pc.compared >= 1);
    }
}

TEST_CASE("termwise differentiation of a stream") {
    Value geo = nf_invert(Value::one() - wpow(-1));  // 1 + w^-1 + w^-2 + ...
    DerivationResult r = derive(geo);
    CHECK(!r.exact);
    auto t = r.value.take(3);
    REQUIRE(t.terms.size() == 3);
    // the constant drops out, every later term steps down one power
    CHECK(t.terms[0].coeff == -1);
    CHECK(equal_exact(t.terms[0].exp, Value::from_int(-2)));
    CHECK(t.terms[1].coeff == -2);
    CHECK(equal_exact(t.terms[1].exp, Value::from_int(-3)));
    CHECK(t.terms[2].coeff == -3);
}

TEST_CASE("axiom report on sampled values is clean") {
    testkit::SamplerConfig cfg;
    cfg.seed = 19;
    testkit::FragmentSampler sampler(cfg);
    std::vector<Value> samples;
    for (int i = 0; i < 40; ++i) samples.push_back(sampler.sample());
    AxiomReport rep = check_derivation_axioms(samples, 6);
    CHECK(rep.pairs > 0);
    CHECK(rep.leibniz_failures == 0);
    CHECK(rep.additivity_failures == 0);
    CHECK(rep.positivity_failures == 0);
    CHECK(rep.small_failures == 0);
    CHECK(rep.ok());
}

TEST_CASE("positivity and smallness on targeted shapes") {
    testkit::SamplerConfig cfg;
    cfg.seed = 29;
    testkit::FragmentSampler sampler(cfg);
    for (int i = 0; i < 10; ++i) {
        Value big = sampler.sample_purely_infinite();
        auto big_lead = big.fetch(0);
        REQUIRE(big_lead.status == TermStatus::Got);
        Value d = derive(big).value;
        auto lead = d.fetch(0);
        REQUIRE(lead.status == TermStatus::Got);
        // The derivative of an infinite element keeps its sign: positive
        // infinite inputs grow, negative ones fall.
        REQUIRE((lead.term->coeff > 0) == (big_lead.term->coeff > 0));

        Value small = sampler.sample_infinitesimal();
        Value ds = derive(small).value;
        auto f = ds.fetch(0);
        if (f.status == TermStatus::Got) {
            REQUIRE(compare_exact(f.term->exp, Value::zero()) == Ordering::Less);
        }
    }
}

TEST_CASE("asymptotic integration closed forms") {
    IntegrateResult r1 = asymptotic_integrate(Value::one());
    CHECK(r1.exact);
    CHECK(equal_exact(r1.value, Value::omega()));

    IntegrateResult r2 = asymptotic_integrate(wpow(-1));
    CHECK(r2.exact);
    CHECK(equal_exact(r2.value, Value::monomial(wpow(-1), 1)));  // log w

    IntegrateResult r3 = asymptotic_integrate(Value::omega());
    CHECK(r3.exact);
    CHECK(equal_exact(r3.value, nf_scale(wpow(2), Rational(1, 2))));

    IntegrateResult r4 = asymptotic_integrate(Value::monomial(Value::omega(), 1));
    CHECK(r4.exact);
    CHECK(equal_exact(r4.value, Value::monomial(Value::omega(), 1)));
    CHECK(r4.rounds == 1);
}

TEST_CASE("integration inverts the derivation at the leading term") {
    testkit::SamplerConfig cfg;
    cfg.seed = 37;
    testkit::FragmentSampler sampler(cfg);
    for (int i = 0; i < 15; ++i) {
        Value x = sampler.sample_nonzero();
        IntegrateResult r = asymptotic_integrate(x);
        Value back = derive(r.value).value;
        REQUIRE(archimedean_relate(back, x) == AsymptoticRelation::Sim);
        if (r.exact) {
            REQUIRE(prefix_equal(back, x, 4).ok);
        }
    }
}

TEST_CASE("multi-term integrands integrate term by term") {
    Value x = Value::omega() + Value::one() + wpow(-1);
    IntegrateResult r = asymptotic_integrate(x);
    CHECK(r.exact);
    // w^2/2 + w + log w
    Value expect = nf_scale(wpow(2), Rational(1, 2)) + Value::omega() +
                   Value::monomial(wpow(-1), 1);
    CHECK(equal_exact(r.value, expect));
    CHECK(prefix_equal(derive(r.value).value, x, 4).ok);
}
