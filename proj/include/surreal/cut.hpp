#pragma once

#include <cstddef>
#include <vector>

#include "surreal/dyadic.hpp"

namespace surreal {

// A cut {L | R} with finitely many dyadic options on each side.  Either side
// may be empty; construction rejects any l >= r pair.
class CutExpr {
public:
    CutExpr() = default;
    CutExpr(std::vector<Dyadic> left, std::vector<Dyadic> right);

    const std::vector<Dyadic>& left() const { return left_; }
    const std::vector<Dyadic>& right() const { return right_; }

private:
    std::vector<Dyadic> left_, right_;
};

// The value of a cut: the dyadic of least birthday strictly between the two
// sides, i.e. the first tree node neither side excludes.
Dyadic simplest_between(const CutExpr& cut);

// Recursive order test: a <= b iff no right ancestor of a is <= a... spelled
// out, iff no left option of a is >= b and no right option of b is <= a.
bool genetic_leq(const Dyadic& a, const Dyadic& b);

// All strictly simpler ancestors of a, split into those below and above a.
CutExpr canonical_cut(const Dyadic& a);

// Field operations computed by cut recursion over ancestor options, not by
// rational arithmetic.  The test suite checks them against the latter.
Dyadic genetic_add(const Dyadic& a, const Dyadic& b);
Dyadic genetic_neg(const Dyadic& a);
Dyadic genetic_mul(const Dyadic& a, const Dyadic& b);

// True iff `fine` refines the same gap as `coarse`: every left option of
// coarse is matched or exceeded by one of fine, every right option matched
// or undercut.
bool is_cofinal(const CutExpr& fine, const CutExpr& coarse);

// The recursion memoizes (a, b) pairs across calls.  Unbounded by default;
// a cap makes the caches refuse new entries once `entries` is reached.
// cap = 0 restores unbounded growth.  Existing entries are kept either way.
void set_genetic_memo_cap(std::size_t entries);
void clear_genetic_memos();

}  // namespace surreal
