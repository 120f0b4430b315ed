#pragma once

#include <optional>
#include <string>
#include <vector>

#include "surreal/common.hpp"

namespace surreal {

// Exact dyadic rational p / 2^k.  Invariant: k == 0, or p is odd.  These are
// the finite-birthday surreal numbers, so they double as the option values of
// every cut the engine can resolve.
class Dyadic {
public:
    Dyadic() : num_(0), k_(0) {}
    explicit Dyadic(BigInt n) : num_(std::move(n)), k_(0) {}
    Dyadic(BigInt numerator, int log2_denominator);

    static std::optional<Dyadic> from_rational(const Rational& r);
    static Dyadic parse(const std::string& text);  // "p", "p/q" (q a power of 2)

    const BigInt& numerator() const { return num_; }
    int log2_denominator() const { return k_; }
    Rational to_rational() const;

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return k_ == 0; }
    int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    static Ordering compare(const Dyadic& a, const Dyadic& b);

    Dyadic operator-() const;
    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.k_ == b.k_ && a.num_ == b.num_;
    }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
    friend bool operator<(const Dyadic& a, const Dyadic& b) {
        return compare(a, b) == Ordering::Less;
    }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }

    std::string to_string() const;  // "p" or "p/q" with q = 2^k

private:
    void reduce();

    BigInt num_;
    int k_;
};

std::uint64_t hash_dyadic(const Dyadic& d);

enum class Sign : signed char { Minus = -1, Plus = 1 };

// Finite sign sequence: the address of a dyadic in the binary tree, root
// first.  Order is lexicographic with minus < (end) < plus.
class SignSeq {
public:
    SignSeq() = default;
    explicit SignSeq(std::vector<Sign> signs) : signs_(std::move(signs)) {}

    static SignSeq encode(const Dyadic& d);
    Dyadic decode() const;

    static Ordering compare_lex(const SignSeq& a, const SignSeq& b);
    // True iff a is a proper or improper initial subsequence of b.
    static bool is_simpler(const SignSeq& a, const SignSeq& b);

    SignSeq flipped() const;

    std::size_t length() const { return signs_.size(); }
    bool empty() const { return signs_.empty(); }
    const std::vector<Sign>& signs() const { return signs_; }

    std::string to_string() const;  // over "+" / "-"; zero is ""
    static SignSeq parse(const std::string& text);

    friend bool operator==(const SignSeq& a, const SignSeq& b) {
        return a.signs_ == b.signs_;
    }
    friend bool operator!=(const SignSeq& a, const SignSeq& b) { return !(a == b); }

private:
    std::vector<Sign> signs_;
};

// Length of the sign sequence, i.e. the tree depth at which d is born.
std::size_t birthday(const Dyadic& d);

}  // namespace surreal
