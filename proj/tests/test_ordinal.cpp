#include "doctest.h"

#include <vector>

#include "surreal/ordinal.hpp"
#include "surreal/value.hpp"

using namespace surreal;

namespace {
OrdinalCNF ord(const char* t) { return parse_ordinal(t); }
}  // namespace

TEST_CASE("ordinal parse and print round trip") {
    for (const char* t : {"0", "1", "w", "w + 1", "w^2*3 + w + 4", "w^w", "w^w*3",
                          "w^(w + 1)", "w^w^w", "eps0", "w^(w^2 + w*2)*5 + w^3"}) {
        CHECK(ord(t).to_string() == t);
    }
    CHECK(ord("w^1").to_string() == "w");
    CHECK(ord("w^0*7").to_string() == "7");
}

TEST_CASE("ordinal comparison is the expected order") {
    std::vector<OrdinalCNF> ascending = {
        ord("0"), ord("1"), ord("2"), ord("w"), ord("w + 1"), ord("w*2"),
        ord("w^2"), ord("w^2 + w"), ord("w^3"), ord("w^w"), ord("w^w + w^2*5"),
        ord("w^(w + 1)"), ord("w^w^w"), ord("eps0"),
    };
    for (std::size_t i = 0; i < ascending.size(); ++i)
        for (std::size_t j = 0; j < ascending.size(); ++j) {
            Ordering want = i < j ? Ordering::Less
                                  : (i > j ? Ordering::Greater : Ordering::Equal);
            REQUIRE(compare_ordinal(ascending[i], ascending[j]) == want);
        }
}

TEST_CASE("natural sum is commutative, associative, cancellative") {
    std::vector<OrdinalCNF> pool = {ord("0"),     ord("3"),        ord("w"),
                                    ord("w + 1"), ord("w^2*2"),    ord("w^w"),
                                    ord("eps0"),  ord("w^3 + w*4")};
    for (const auto& a : pool)
        for (const auto& b : pool) {
            REQUIRE(natural_sum(a, b) == natural_sum(b, a));
            for (const auto& c : pool) {
                REQUIRE(natural_sum(natural_sum(a, b), c) ==
                        natural_sum(a, natural_sum(b, c)));
                // cancellation: a + c = b + c forces a = b
                if (natural_sum(a, c) == natural_sum(b, c)) REQUIRE(a == b);
            }
        }
    CHECK(natural_sum(ord("1"), ord("w")) == ord("w + 1"));
    CHECK(natural_sum(ord("w^2 + w"), ord("w^2*2 + 3")) == ord("w^2*3 + w + 3"));
}

TEST_CASE("natural product distributes over natural sum") {
    std::vector<OrdinalCNF> pool = {ord("0"), ord("2"), ord("w"), ord("w + 1"),
                                    ord("w^2"), ord("w^w*3")};
    for (const auto& a : pool) {
        REQUIRE(natural_product(a, ord("1")) == a);
        REQUIRE(natural_product(a, ord("0")) == ord("0"));
        for (const auto& b : pool) {
            REQUIRE(natural_product(a, b) == natural_product(b, a));
            for (const auto& c : pool) {
                REQUIRE(natural_product(a, natural_sum(b, c)) ==
                        natural_sum(natural_product(a, b), natural_product(a, c)));
            }
        }
    }
    CHECK(natural_product(ord("w + 1"), ord("w + 1")) == ord("w^2 + w*2 + 1"));
    CHECK(natural_product(ord("w^w"), ord("w^2")) == ord("w^(w + 2)"));
}

TEST_CASE("omega powers and the eps0 fixed point") {
    CHECK(omega_pow_ordinal(ord("0")) == ord("1"));
    CHECK(omega_pow_ordinal(ord("1")) == ord("w"));
    CHECK(omega_pow_ordinal(ord("w")) == ord("w^w"));
    CHECK(omega_pow_ordinal(ord("eps0")) == ord("eps0"));
    CHECK(ord("w^w^w") < ord("eps0"));
    CHECK(ord("eps0") < natural_sum(ord("eps0"), ord("1")));
    CHECK(omega_pow_ordinal(natural_sum(ord("eps0"), ord("1"))).to_string() ==
          "w^(eps0 + 1)");
}

TEST_CASE("monotonicity of the natural operations") {
    std::vector<OrdinalCNF> pool = {ord("0"), ord("1"), ord("w"), ord("w^2"),
                                    ord("w^w"), ord("eps0")};
    for (const auto& a : pool)
        for (const auto& b : pool)
            for (const auto& c : pool) {
                if (compare_ordinal(a, b) == Ordering::Less) {
                    REQUIRE(compare_ordinal(natural_sum(a, c), natural_sum(b, c)) ==
                            Ordering::Less);
                }
            }
}

TEST_CASE("ordinals embed into the series layer order-faithfully") {
    std::vector<OrdinalCNF> pool = {ord("0"),   ord("1"),   ord("w"),
                                    ord("w + 1"), ord("w^2*3 + 4"), ord("w^w"),
                                    ord("eps0")};
    for (const auto& a : pool)
        for (const auto& b : pool) {
            Ordering ordinal_side = compare_ordinal(a, b);
            Ordering series_side = compare_exact(embed_ordinal(a), embed_ordinal(b));
            REQUIRE(ordinal_side == series_side);
        }
    CHECK(embed_ordinal(ord("eps0")).is_eps0_atom());
    CHECK(equal_exact(embed_ordinal(ord("w")), Value::omega()));
}
