#include "doctest.h"

#include <vector>

#include "surreal/testkit.hpp"
#include "surreal/value.hpp"

using namespace surreal;

namespace {

Value ipow(const Value& b, int n) {
    Value acc = Value::one();
    for (int i = 0; i < n; ++i) acc = acc * b;
    return acc;
}

std::vector<Value> finite_samples(std::uint64_t seed, int count) {
    testkit::SamplerConfig cfg;
    cfg.seed = seed;
    testkit::FragmentSampler sampler(cfg);
    std::vector<Value> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(sampler.sample());
    return out;
}

}  // namespace

TEST_CASE("normal form construction validates its invariants") {
    CHECK(Value::zero().is_zero());
    CHECK(Value::from_int(0).is_zero());
    CHECK(equal_exact(Value::from_rational(Rational(3, 2)),
                      Value::monomial(Value::zero(), Rational(3, 2))));
    CHECK_THROWS_AS(Value::from_terms({Term{Value::zero(), Rational(0)}}), DomainError);
    // exponents must strictly decrease
    CHECK_THROWS_AS(Value::from_terms({Term{Value::one(), Rational(1)},
                                       Term{Value::one(), Rational(2)}}),
                    DomainError);
    CHECK_THROWS_AS(Value::from_terms({Term{Value::zero(), Rational(1)},
                                       Term{Value::one(), Rational(2)}}),
                    DomainError);
}

TEST_CASE("w^eps0 collapses to the eps0 atom") {
    Value v = Value::monomial(Value::eps0(), Rational(1));
    CHECK(v.is_eps0_atom());
    // the atom unfolds one level on demand
    auto f = v.fetch(0);
    REQUIRE(f.status == TermStatus::Got);
    CHECK(f.term->exp.is_eps0_atom());
    CHECK(f.term->coeff == 1);
    CHECK(v.fetch(1).status == TermStatus::End);
    // with any other coefficient it stays an ordinary term
    CHECK(!Value::monomial(Value::eps0(), Rational(2)).is_eps0_atom());
}

TEST_CASE("ring laws hold exactly on sampled finite normal forms") {
    auto xs = finite_samples(11, 24);
    for (std::size_t i = 0; i + 2 < xs.size(); i += 3) {
        const Value &a = xs[i], &b = xs[i + 1], &c = xs[i + 2];
        REQUIRE(equal_exact(a + b, b + a));
        REQUIRE(equal_exact((a + b) + c, a + (b + c)));
        REQUIRE(equal_exact(a * b, b * a));
        REQUIRE(equal_exact((a * b) * c, a * (b * c)));
        REQUIRE(equal_exact(a * (b + c), a * b + a * c));
        REQUIRE(equal_exact(a + Value::zero(), a));
        REQUIRE(equal_exact(a * Value::one(), a));
        REQUIRE(equal_exact(a - a, Value::zero()));
        REQUIRE(equal_exact(a + (-a), Value::zero()));
    }
}

TEST_CASE("compare_exact is a total order on finite normal forms") {
    auto xs = finite_samples(23, 18);
    for (const Value& a : xs)
        for (const Value& b : xs) {
            Ordering ab = compare_exact(a, b);
            Ordering ba = compare_exact(b, a);
            if (ab == Ordering::Less) REQUIRE(ba == Ordering::Greater);
            if (ab == Ordering::Equal) REQUIRE(ba == Ordering::Equal);
            // order respects addition
            Ordering shifted = compare_exact(a + Value::one(), b + Value::one());
            REQUIRE(ab == shifted);
        }
    CHECK(compare_exact(Value::omega(), Value::from_int(1000000)) == Ordering::Greater);
    CHECK(compare_exact(Value::monomial(Value::from_int(-1), 1), Value::from_rational(Rational(1, 1000000))) == Ordering::Less);
    CHECK(compare_exact(Value::monomial(Value::from_int(-1), 1), Value::zero()) == Ordering::Greater);
}

TEST_CASE("the eps0 atom dwarfs every finite tower") {
    Value tower = Value::omega();
    for (int i = 0; i < 4; ++i) tower = Value::monomial(tower, 1);
    CHECK(compare_exact(tower, Value::eps0()) == Ordering::Less);
    CHECK(compare_exact(Value::eps0(), Value::eps0()) == Ordering::Equal);
    CHECK(compare_exact(Value::eps0() + Value::one(), Value::eps0()) == Ordering::Greater);
}

TEST_CASE("w times 1/w is exactly 1") {
    Value inv = nf_div(Value::one(), Value::omega());
    CHECK(equal_exact(inv, Value::monomial(Value::from_int(-1), 1)));
    CHECK(equal_exact(Value::omega() * inv, Value::one()));
}

TEST_CASE("negative omega powers multiply by adding exponents") {
    for (int n = 0; n <= 6; ++n)
        for (int m = 0; m <= 6; ++m) {
            Value a = Value::monomial(Value::from_int(-n), 1);
            Value b = Value::monomial(Value::from_int(-m), 1);
            REQUIRE(equal_exact(a * b, Value::monomial(Value::from_int(-(n + m)), 1)));
        }
}

TEST_CASE("inverting 1 - w^-1 yields the geometric series") {
    Value geo = nf_invert(Value::one() - Value::monomial(Value::from_int(-1), 1));
    auto t = geo.take(25);
    REQUIRE(t.terms.size() == 25);
    CHECK(!t.complete);
    for (int i = 0; i < 25; ++i) {
        REQUIRE(t.terms[static_cast<std::size_t>(i)].coeff == 1);
        REQUIRE(equal_exact(t.terms[static_cast<std::size_t>(i)].exp, Value::from_int(-i)));
    }
}

TEST_CASE("division undoes multiplication on sampled values") {
    testkit::SamplerConfig cfg;
    cfg.seed = 31;
    testkit::FragmentSampler sampler(cfg);
    for (int i = 0; i < 12; ++i) {
        Value a = sampler.sample();
        Value b = sampler.sample_nonzero();
        Value q = nf_div(a * b, b);
        auto pc = prefix_equal(q, a, 8);
        REQUIRE(pc.ok);
        REQUIRE((pc.complete || pc.compared >= 1));
        Value r = b * nf_invert(b);
        auto pu = prefix_equal(r, Value::one(), 4);
        REQUIRE(pu.ok);
        REQUIRE(pu.compared >= 1);
    }
    CHECK_THROWS_AS(nf_invert(Value::zero()), DomainError);
    CHECK_THROWS_AS(nf_div(Value::one(), Value::zero()), DomainError);
}

TEST_CASE("budgeted comparison answers when a prefix decides") {
    Value geo = nf_invert(Value::one() - Value::monomial(Value::from_int(-1), 1));
    CHECK(nf_compare(geo, Value::from_int(2)) == CompareResult::LT);
    CHECK(nf_compare(Value::from_int(2), geo) == CompareResult::GT);
    CHECK(nf_compare(geo, Value::zero()) == CompareResult::GT);
    // equality of two endless streams is past any budget
    Value geo2 = nf_invert(Value::one() - Value::monomial(Value::from_int(-1), 1));
    CHECK(nf_compare(geo, geo2) == CompareResult::UNDECIDED);
    CHECK(nf_compare(geo, geo2, 8) == CompareResult::UNDECIDED);
}

TEST_CASE("prefix_equal only reports proven disagreement") {
    Value geo = nf_invert(Value::one() - Value::monomial(Value::from_int(-1), 1));
    Value bumped = geo + Value::monomial(Value::from_int(-2), Rational(1, 2));
    auto pc = prefix_equal(geo, bumped, 5);
    CHECK(!pc.ok);
    auto same = prefix_equal(geo, geo, 5);
    CHECK(same.ok);
    CHECK(same.compared == 5);
    CHECK(!same.complete);
}

TEST_CASE("streams go unknown once their work cap is hit, and stay unknown") {
    int calls = 0;
    Value v = sum_of_stream([&calls]() -> std::optional<Term> {
        ++calls;
        if (calls == 1) return Term{Value::zero(), Rational(1)};
        throw WorkLimitError("feed: deliberately out of budget");
    });
    CHECK(v.fetch(0).status == TermStatus::Got);
    CHECK(v.fetch(1).status == TermStatus::Unknown);
    int after_first = calls;
    CHECK(v.fetch(1).status == TermStatus::Unknown);
    CHECK(v.fetch(5).status == TermStatus::Unknown);
    // the source is never consulted again
    CHECK(calls == after_first);
    auto t = v.take(3);
    CHECK(t.unknown);
    CHECK(!t.complete);
    CHECK(t.terms.size() == 1);
}

TEST_CASE("malformed term streams are rejected") {
    Value increasing = sum_of_stream([n = 0]() mutable -> std::optional<Term> {
        return Term{Value::from_int(n++), Rational(1)};
    });
    CHECK(increasing.fetch(0).status == TermStatus::Got);
    CHECK_THROWS_AS(increasing.fetch(1), MalformedStream);

    Value zero_coeff = sum_of_stream([]() -> std::optional<Term> {
        return Term{Value::zero(), Rational(0)};
    });
    CHECK_THROWS_AS(zero_coeff.fetch(0), MalformedStream);
}

TEST_CASE("additive decomposition splits by exponent sign") {
    Value x = Value::monomial(Value::from_int(2), 3) + Value::from_int(5) +
              Value::monomial(Value::from_int(-1), 7);
    Decomposition d = additive_decompose(x);
    CHECK(equal_exact(d.purely_infinite, Value::monomial(Value::from_int(2), 3)));
    CHECK(d.constant == 5);
    CHECK(equal_exact(d.infinitesimal, Value::monomial(Value::from_int(-1), 7)));
    CHECK(equal_exact(d.purely_infinite + Value::from_rational(d.constant) + d.infinitesimal, x));

    Decomposition z = additive_decompose(Value::zero());
    CHECK(z.purely_infinite.is_zero());
    CHECK(z.constant == 0);
    CHECK(z.infinitesimal.is_zero());
}

TEST_CASE("multiplicative decomposition peels the leading monomial") {
    Value x = Value::monomial(Value::from_int(2), 3) + Value::omega();
    MultDecomposition d = multiplicative_decompose(x);
    CHECK(equal_exact(d.leading_exponent, Value::from_int(2)));
    CHECK(d.leading_coeff == 3);
    auto t = d.unit_tail.take(3);
    REQUIRE(t.terms.size() == 1);
    CHECK(t.complete);
    CHECK(t.terms[0].coeff == Rational(1, 3));
    CHECK(equal_exact(t.terms[0].exp, Value::from_int(-1)));
    Value back = Value::monomial(d.leading_exponent, d.leading_coeff) *
                 (Value::one() + d.unit_tail);
    CHECK(prefix_equal(back, x, 4).ok);
}

TEST_CASE("archimedean comparison looks at leading terms") {
    Value w = Value::omega();
    Value w2 = Value::monomial(Value::from_int(2), 1);
    CHECK(archimedean_relate(w, w2) == AsymptoticRelation::Prec);
    CHECK(archimedean_relate(w2, w) == AsymptoticRelation::Succ);
    CHECK(archimedean_relate(w2 + w, Value::monomial(Value::from_int(2), 3)) ==
          AsymptoticRelation::AsympEq);
    CHECK(archimedean_relate(w2 + w, w2 + Value::one()) == AsymptoticRelation::Sim);
    CHECK_THROWS_AS(archimedean_relate(Value::zero(), w), DomainError);
}

TEST_CASE("scaling by rationals is exact") {
    Value x = Value::omega() + Value::one();
    Value h = nf_scale(x, Rational(1, 2));
    auto t = h.take(3);
    REQUIRE(t.terms.size() == 2);
    CHECK(t.terms[0].coeff == Rational(1, 2));
    CHECK(t.terms[1].coeff == Rational(1, 2));
    CHECK(equal_exact(nf_scale(x, Rational(0)), Value::zero()));
    CHECK(equal_exact(nf_scale_monomial(x, Value::from_int(1), Rational(2)),
                      Value::monomial(Value::from_int(2), 2) + Value::monomial(Value::from_int(1), 2)));
}

TEST_CASE("integer roots of rationals") {
    CHECK(rational_nth_root(Rational(4), 2) == Rational(2));
    CHECK(rational_nth_root(Rational(8, 27), 3) == Rational(2, 3));
    CHECK(rational_nth_root(Rational(-8), 3) == Rational(-2));
    CHECK(rational_nth_root(Rational(1), 7) == Rational(1));
    CHECK(!rational_nth_root(Rational(2), 2).has_value());
    CHECK(!rational_nth_root(Rational(-4), 2).has_value());
}

TEST_CASE("nth_root inverts integer powers") {
    Value x = Value::monomial(Value::from_int(2), 4);
    CHECK(equal_exact(nth_root(x, 2), Value::monomial(Value::one(), 2)));
    CHECK(equal_exact(nth_root(Value::monomial(Value::from_int(6), 1), 3),
                      Value::monomial(Value::from_int(2), 1)));
    CHECK(equal_exact(nth_root(Value::from_int(9), 2), Value::from_int(3)));
    CHECK_THROWS_AS(nth_root(Value::from_int(-1), 2), DomainError);
    CHECK_THROWS_AS(nth_root(Value::from_int(2), 2), DomainError);

    // a genuinely serial case: sqrt(1 + w^-1) squared
    Value u = Value::one() + Value::monomial(Value::from_int(-1), 1);
    Value r = nth_root(u, 2);
    auto back = prefix_equal(r * r, u, 4);
    CHECK(back.ok);
    CHECK(back.compared >= 2);
    // binomial coefficients of (1 + eps)^(1/2)
    auto t = r.take(3);
    REQUIRE(t.terms.size() == 3);
    CHECK(t.terms[0].coeff == 1);
    CHECK(t.terms[1].coeff == Rational(1, 2));
    CHECK(t.terms[2].coeff == Rational(-1, 8));
}

TEST_CASE("sampled roots square back to their argument") {
    testkit::SamplerConfig cfg;
    cfg.seed = 77;
    testkit::FragmentSampler sampler(cfg);
    for (int i = 0; i < 8; ++i) {
        Value x = sampler.sample_nonzero();
        Value sq = x * x;
        Value r = nth_root(sq, 2);
        // roots return the positive branch, so compare squares
        auto pc = prefix_equal(r * r, sq, 5);
        REQUIRE(pc.ok);
        REQUIRE(pc.compared >= 1);
    }
}

TEST_CASE("ladder sums merge families with decreasing leads") {
    // sum_k w^-k * (k+1) delivered as a ladder of singleton summands
    Value v = ladder_sum([](std::size_t k) -> std::optional<Value> {
        if (k > 30) return std::nullopt;
        return Value::monomial(Value::from_int(-static_cast<long>(k)),
                               Rational(static_cast<long>(k) + 1));
    });
    auto t = v.take(4);
    REQUIRE(t.terms.size() == 4);
    for (int k = 0; k < 4; ++k) {
        REQUIRE(t.terms[static_cast<std::size_t>(k)].coeff == k + 1);
        REQUIRE(equal_exact(t.terms[static_cast<std::size_t>(k)].exp, Value::from_int(-k)));
    }
}

TEST_CASE("powers of a unit expand multinomially") {
    Value u = Value::one() + Value::monomial(Value::from_int(-1), 1);
    Value cube = ipow(u, 3);
    auto t = cube.take(5);
    REQUIRE(t.terms.size() == 4);
    CHECK(t.complete);
    CHECK(t.terms[0].coeff == 1);
    CHECK(t.terms[1].coeff == 3);
    CHECK(t.terms[2].coeff == 3);
    CHECK(t.terms[3].coeff == 1);
}

TEST_CASE("structural hashing agrees on equal finite values") {
    Value a = Value::monomial(Value::from_int(2), 3) + Value::from_int(5);
    Value b = Value::from_int(5) + Value::monomial(Value::from_int(2), 3);
    CHECK(a.hash() == b.hash());
    CHECK(Value::eps0().hash() == Value::eps0().hash());
    Value stream = nf_invert(Value::one() - Value::monomial(Value::from_int(-1), 1));
    CHECK_THROWS_AS(stream.hash(), DomainError);
}

TEST_CASE("omega_map rejects stream exponents and embeds the rest") {
    CHECK(equal_exact(omega_map(Value::one()), Value::omega()));
    CHECK(equal_exact(omega_map(Value::zero()), Value::one()));
    CHECK(omega_map(Value::eps0()).is_eps0_atom());
    Value stream = nf_invert(Value::one() - Value::monomial(Value::from_int(-1), 1));
    CHECK_THROWS_AS(omega_map(stream), DomainError);
    CHECK_THROWS_AS(Value::monomial(stream, Rational(1)), DomainError);
}
