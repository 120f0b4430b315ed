#pragma once

#include <string>
#include <vector>

#include "surreal/common.hpp"

namespace surreal {

struct OrdTerm;

// Ordinal in Cantor normal form: w^e1*c1 + ... + w^en*cn with e1 > ... > en
// and positive integer coefficients.  The universe is [0, eps0] where eps0
// is carried as an atom; since w^eps0 = eps0, a lone term (eps0, 1)
// normalizes back to the atom.  Anything that would climb past eps0 is out
// of range and rejected at parse time; the arithmetic itself is closed.
class OrdinalCNF {
public:
    OrdinalCNF() = default;  // zero

    static OrdinalCNF zero();
    static OrdinalCNF one();
    static OrdinalCNF from_int(const BigInt& n);
    static OrdinalCNF omega();
    static OrdinalCNF eps0();
    static OrdinalCNF from_terms(std::vector<OrdTerm> terms);

    bool is_zero() const;
    bool is_eps0() const { return eps0_; }
    const std::vector<OrdTerm>& terms() const;

    static Ordering compare(const OrdinalCNF& a, const OrdinalCNF& b);

    friend bool operator==(const OrdinalCNF& a, const OrdinalCNF& b) {
        return compare(a, b) == Ordering::Equal;
    }
    friend bool operator!=(const OrdinalCNF& a, const OrdinalCNF& b) { return !(a == b); }
    friend bool operator<(const OrdinalCNF& a, const OrdinalCNF& b) {
        return compare(a, b) == Ordering::Less;
    }

    std::string to_string() const;

private:
    // Either the eps0 atom, or a term list.
    bool eps0_ = false;
    std::vector<OrdTerm> terms_;
};

struct OrdTerm {
    OrdinalCNF exp;
    BigInt coeff;  // >= 1
};

// Hessenberg sum and product: coefficient-wise polynomial arithmetic on the
// normal forms, commutative and cancellative unlike the ordinal ordered sum.
OrdinalCNF natural_sum(const OrdinalCNF& a, const OrdinalCNF& b);
OrdinalCNF natural_product(const OrdinalCNF& a, const OrdinalCNF& b);

OrdinalCNF omega_pow_ordinal(const OrdinalCNF& a);

Ordering compare_ordinal(const OrdinalCNF& a, const OrdinalCNF& b);

// Text form, e.g. "w^2*3 + w + 4", "w^(w + 1)", "eps0", "0".
OrdinalCNF parse_ordinal(const std::string& text);

}  // namespace surreal
