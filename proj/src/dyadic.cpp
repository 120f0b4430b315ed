#include "surreal/dyadic.hpp"

#include <algorithm>

namespace surreal {

namespace {

BigInt pow2(int k) {
    BigInt one(1);
    return one << k;
}

bool integer_literal(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

}  // namespace

Dyadic::Dyadic(BigInt numerator, int log2_denominator)
    : num_(std::move(numerator)), k_(log2_denominator) {
    if (k_ < 0) throw DomainError("dyadic: negative denominator exponent");
    reduce();
}

void Dyadic::reduce() {
    if (num_ == 0) {
        k_ = 0;
        return;
    }
    while (k_ > 0 && (num_ & 1) == 0) {
        num_ >>= 1;
        --k_;
    }
}

std::optional<Dyadic> Dyadic::from_rational(const Rational& r) {
    BigInt den = boost::multiprecision::denominator(r);
    int k = 0;
    while ((den & 1) == 0) {
        den >>= 1;
        ++k;
    }
    if (den != 1) return std::nullopt;
    return Dyadic(boost::multiprecision::numerator(r), k);
}

Dyadic Dyadic::parse(const std::string& text) {
    auto slash = text.find('/');
    std::string num = text.substr(0, slash == std::string::npos ? text.size() : slash);
    if (!integer_literal(num))
        throw DomainError("dyadic: malformed literal '" + text + "'");
    if (slash == std::string::npos) {
        return Dyadic(BigInt(num));
    }
    std::string den = text.substr(slash + 1);
    if (!integer_literal(den))
        throw DomainError("dyadic: malformed literal '" + text + "'");
    BigInt p(num);
    BigInt q(den);
    if (q <= 0) throw DomainError("dyadic: denominator must be positive");
    int k = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++k;
    }
    if (q != 1) throw DomainError("dyadic: denominator must be a power of two");
    return Dyadic(std::move(p), k);
}

Rational Dyadic::to_rational() const {
    return Rational(num_, pow2(k_));
}

Ordering Dyadic::compare(const Dyadic& a, const Dyadic& b) {
    // Compare p/2^j with q/2^k by cross-scaling to the common denominator.
    int shift_a = std::max(a.k_, b.k_) - a.k_;
    int shift_b = std::max(a.k_, b.k_) - b.k_;
    BigInt lhs = a.num_ << shift_a;
    BigInt rhs = b.num_ << shift_b;
    if (lhs < rhs) return Ordering::Less;
    if (rhs < lhs) return Ordering::Greater;
    return Ordering::Equal;
}

Dyadic Dyadic::operator-() const {
    Dyadic r;
    r.num_ = -num_;
    r.k_ = k_;
    return r;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    int k = std::max(a.k_, b.k_);
    BigInt n = (a.num_ << (k - a.k_)) + (b.num_ << (k - b.k_));
    return Dyadic(std::move(n), k);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    return a + (-b);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.num_ * b.num_, a.k_ + b.k_);
}

std::string Dyadic::to_string() const {
    if (k_ == 0) return num_.str();
    return num_.str() + "/" + pow2(k_).str();
}

std::uint64_t hash_dyadic(const Dyadic& d) {
    return hash_mix(hash_bigint(d.numerator()),
                    static_cast<std::uint64_t>(d.log2_denominator()));
}

SignSeq SignSeq::encode(const Dyadic& d) {
    std::vector<Sign> out;
    if (d.is_zero()) return SignSeq(std::move(out));
    Sign dir = d.sign() > 0 ? Sign::Plus : Sign::Minus;

    // Integer run: |d| rounded up copies of the leading sign.
    BigInt absn = d.numerator() < 0 ? BigInt(-d.numerator()) : d.numerator();
    BigInt run = (absn + (pow2(d.log2_denominator()) - 1)) >> d.log2_denominator();
    for (BigInt i = 0; i < run; ++i) out.push_back(dir);

    // Fractional walk: halve the step until we land on d exactly.
    Dyadic v(d.sign() > 0 ? run : -run);
    Dyadic step(BigInt(1), 1);
    while (v != d) {
        if (d < v) {
            out.push_back(Sign::Minus);
            v = v - step;
        } else {
            out.push_back(Sign::Plus);
            v = v + step;
        }
        step = Dyadic(step.numerator(), step.log2_denominator() + 1);
    }
    return SignSeq(std::move(out));
}

Dyadic SignSeq::decode() const {
    if (signs_.empty()) return Dyadic();
    std::size_t run = 1;
    while (run < signs_.size() && signs_[run] == signs_[0]) ++run;
    BigInt whole(static_cast<long>(run));
    Dyadic v(signs_[0] == Sign::Plus ? whole : -whole);
    Dyadic step(BigInt(1), 1);
    for (std::size_t i = run; i < signs_.size(); ++i) {
        v = signs_[i] == Sign::Plus ? v + step : v - step;
        step = Dyadic(step.numerator(), step.log2_denominator() + 1);
    }
    return v;
}

Ordering SignSeq::compare_lex(const SignSeq& a, const SignSeq& b) {
    std::size_t n = std::max(a.signs_.size(), b.signs_.size());
    for (std::size_t i = 0; i < n; ++i) {
        int ai = i < a.signs_.size() ? static_cast<int>(a.signs_[i]) : 0;
        int bi = i < b.signs_.size() ? static_cast<int>(b.signs_[i]) : 0;
        if (ai != bi) return ai < bi ? Ordering::Less : Ordering::Greater;
    }
    return Ordering::Equal;
}

bool SignSeq::is_simpler(const SignSeq& a, const SignSeq& b) {
    if (a.signs_.size() > b.signs_.size()) return false;
    return std::equal(a.signs_.begin(), a.signs_.end(), b.signs_.begin());
}

SignSeq SignSeq::flipped() const {
    std::vector<Sign> out;
    out.reserve(signs_.size());
    for (Sign s : signs_) out.push_back(s == Sign::Plus ? Sign::Minus : Sign::Plus);
    return SignSeq(std::move(out));
}

std::string SignSeq::to_string() const {
    std::string out;
    out.reserve(signs_.size());
    for (Sign s : signs_) out.push_back(s == Sign::Plus ? '+' : '-');
    return out;
}

SignSeq SignSeq::parse(const std::string& text) {
    std::vector<Sign> out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '+') {
            out.push_back(Sign::Plus);
        } else if (text[i] == '-') {
            out.push_back(Sign::Minus);
        } else {
            throw ParseError("sign sequence: expected '+' or '-'", i);
        }
    }
    return SignSeq(std::move(out));
}

std::size_t birthday(const Dyadic& d) {
    if (d.is_zero()) return 0;
    BigInt absn = d.numerator() < 0 ? BigInt(-d.numerator()) : d.numerator();
    int k = d.log2_denominator();
    BigInt whole = (absn + ((BigInt(1) << k) - 1)) >> k;
    return static_cast<std::size_t>(whole) + static_cast<std::size_t>(k);
}

}  // namespace surreal
