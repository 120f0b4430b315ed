#include "surreal/ordinal.hpp"

#include <algorithm>
#include <cctype>

namespace surreal {

OrdinalCNF OrdinalCNF::zero() { return OrdinalCNF(); }

OrdinalCNF OrdinalCNF::one() { return from_int(1); }

OrdinalCNF OrdinalCNF::from_int(const BigInt& n) {
    if (n < 0) throw DomainError("ordinal: negative integer");
    OrdinalCNF r;
    if (n > 0) r.terms_.push_back({OrdinalCNF(), n});
    return r;
}

OrdinalCNF OrdinalCNF::omega() {
    OrdinalCNF r;
    r.terms_.push_back({one(), 1});
    return r;
}

OrdinalCNF OrdinalCNF::eps0() {
    OrdinalCNF r;
    r.eps0_ = true;
    return r;
}

OrdinalCNF OrdinalCNF::from_terms(std::vector<OrdTerm> terms) {
    for (const OrdTerm& t : terms)
        if (t.coeff < 1) throw DomainError("ordinal: coefficients must be positive");
    for (std::size_t i = 0; i + 1 < terms.size(); ++i)
        if (compare(terms[i].exp, terms[i + 1].exp) != Ordering::Greater)
            throw DomainError("ordinal: exponents must be strictly decreasing");
    // w^eps0 * 1 is eps0 itself.
    if (terms.size() == 1 && terms[0].coeff == 1 && terms[0].exp.is_eps0())
        return eps0();
    OrdinalCNF r;
    r.terms_ = std::move(terms);
    return r;
}

bool OrdinalCNF::is_zero() const { return !eps0_ && terms_.empty(); }

const std::vector<OrdTerm>& OrdinalCNF::terms() const {
    // The atom presents itself as the single term w^eps0 when asked.
    static const std::vector<OrdTerm> eps0_view = {OrdTerm{OrdinalCNF::eps0(), 1}};
    return eps0_ ? eps0_view : terms_;
}

Ordering OrdinalCNF::compare(const OrdinalCNF& a, const OrdinalCNF& b) {
    if (a.eps0_ && b.eps0_) return Ordering::Equal;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::size_t n = std::max(ta.size(), tb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= ta.size()) return Ordering::Less;
        if (i >= tb.size()) return Ordering::Greater;
        Ordering e = compare(ta[i].exp, tb[i].exp);
        if (e != Ordering::Equal) return e;
        if (ta[i].coeff != tb[i].coeff)
            return ta[i].coeff < tb[i].coeff ? Ordering::Less : Ordering::Greater;
    }
    return Ordering::Equal;
}

Ordering compare_ordinal(const OrdinalCNF& a, const OrdinalCNF& b) {
    return OrdinalCNF::compare(a, b);
}

OrdinalCNF natural_sum(const OrdinalCNF& a, const OrdinalCNF& b) {
    std::vector<OrdTerm> out;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
        if (i == ta.size()) {
            out.push_back(tb[j++]);
        } else if (j == tb.size()) {
            out.push_back(ta[i++]);
        } else {
            Ordering c = OrdinalCNF::compare(ta[i].exp, tb[j].exp);
            if (c == Ordering::Greater) {
                out.push_back(ta[i++]);
            } else if (c == Ordering::Less) {
                out.push_back(tb[j++]);
            } else {
                out.push_back({ta[i].exp, ta[i].coeff + tb[j].coeff});
                ++i;
                ++j;
            }
        }
    }
    return OrdinalCNF::from_terms(std::move(out));
}

OrdinalCNF natural_product(const OrdinalCNF& a, const OrdinalCNF& b) {
    OrdinalCNF acc;
    for (const OrdTerm& x : a.terms()) {
        for (const OrdTerm& y : b.terms()) {
            std::vector<OrdTerm> one_term;
            one_term.push_back({natural_sum(x.exp, y.exp), x.coeff * y.coeff});
            acc = natural_sum(acc, OrdinalCNF::from_terms(std::move(one_term)));
        }
    }
    return acc;
}

OrdinalCNF omega_pow_ordinal(const OrdinalCNF& a) {
    std::vector<OrdTerm> t;
    t.push_back({a, 1});
    return OrdinalCNF::from_terms(std::move(t));
}

namespace {

// Bare text of w^e. The reader treats ^ as right-associative, so one-piece
// exponents stack without parentheses; anything else gets wrapped.
std::string omega_power_text(const OrdinalCNF& e) {
    if (e == OrdinalCNF::one()) return "w";
    if (e.is_eps0()) return "w^eps0";
    const auto& ts = e.terms();
    if (ts.size() == 1 && ts[0].exp.is_zero()) return "w^" + ts[0].coeff.str();
    if (ts.size() == 1 && ts[0].coeff == 1) return "w^" + omega_power_text(ts[0].exp);
    return "w^(" + e.to_string() + ")";
}

}  // namespace

std::string OrdinalCNF::to_string() const {
    if (eps0_) return "eps0";
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) out += " + ";
        const OrdTerm& t = terms_[i];
        if (t.exp.is_zero()) {
            out += t.coeff.str();
            continue;
        }
        // w^eps0 is eps0 itself, so print the fixed point by name.
        out += t.exp.is_eps0() ? "eps0" : omega_power_text(t.exp);
        if (t.coeff != 1) out += "*" + t.coeff.str();
    }
    return out;
}

namespace {

// Tiny recursive-descent reader for the to_string grammar above.
class OrdReader {
public:
    explicit OrdReader(const std::string& s) : s_(s) {}

    OrdinalCNF read() {
        OrdinalCNF v = sum();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("ordinal: trailing input", pos_);
        return v;
    }

private:
    OrdinalCNF sum() {
        OrdinalCNF acc = term();
        for (;;) {
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '+') {
                ++pos_;
                acc = natural_sum(acc, term());
            } else {
                return acc;
            }
        }
    }

    OrdinalCNF term() {
        OrdinalCNF base = power();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '*') {
            ++pos_;
            skip_ws();
            BigInt c = integer();
            return natural_product(base, OrdinalCNF::from_int(c));
        }
        return base;
    }

    // Digits, eps0, or w with an optional right-associative exponent chain.
    // A *coefficient always belongs to the enclosing term, never an exponent.
    OrdinalCNF power() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("ordinal: expected term", pos_);
        if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            return OrdinalCNF::from_int(integer());
        }
        if (s_.compare(pos_, 4, "eps0") == 0) {
            pos_ += 4;
            return OrdinalCNF::eps0();
        }
        if (s_.compare(pos_, 4, "eps1") == 0)
            throw DomainError("ordinal: eps1 and larger epsilon numbers are unsupported");
        if (s_[pos_] != 'w')
            throw ParseError("ordinal: expected 'w', 'eps0' or digits", pos_);
        ++pos_;
        OrdinalCNF exp = OrdinalCNF::one();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '(') {
                ++pos_;
                exp = sum();
                skip_ws();
                if (pos_ >= s_.size() || s_[pos_] != ')')
                    throw ParseError("ordinal: expected ')'", pos_);
                ++pos_;
            } else {
                exp = power();
            }
        }
        return omega_pow_ordinal(exp);
    }

    BigInt integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_) throw ParseError("ordinal: expected digits", pos_);
        return BigInt(s_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

OrdinalCNF parse_ordinal(const std::string& text) {
    return OrdReader(text).read();
}

}  // namespace surreal
