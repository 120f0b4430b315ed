#include "surreal/cut.hpp"

#include <atomic>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>

namespace surreal {

CutExpr::CutExpr(std::vector<Dyadic> left, std::vector<Dyadic> right)
    : left_(std::move(left)), right_(std::move(right)) {
    for (const Dyadic& l : left_)
        for (const Dyadic& r : right_)
            if (!(l < r))
                throw CutViolation("cut: left option " + l.to_string() +
                                   " is not below right option " + r.to_string());
}

Dyadic simplest_between(const CutExpr& cut) {
    // Walk the tree from the root.  The current node is pushed rightwards by
    // left options it does not exceed and leftwards by right options it does
    // not undercut; the first node that clears both sides is the value.
    //
    // State: in the integer run the step stays 1; after the first turn the
    // step halves forever.
    Dyadic v;
    Dyadic step(BigInt(1));
    bool fractional = false;
    std::optional<Sign> run_dir;
    for (;;) {
        bool too_low = false, too_high = false;
        for (const Dyadic& l : cut.left())
            if (v <= l) { too_low = true; break; }
        if (!too_low)
            for (const Dyadic& r : cut.right())
                if (r <= v) { too_high = true; break; }
        if (!too_low && !too_high) return v;

        Sign dir = too_low ? Sign::Plus : Sign::Minus;
        if (!fractional) {
            if (!run_dir) {
                run_dir = dir;
            } else if (*run_dir != dir) {
                fractional = true;
                step = Dyadic(BigInt(1), 1);
            }
        }
        v = dir == Sign::Plus ? v + step : v - step;
        if (fractional) step = Dyadic(step.numerator(), step.log2_denominator() + 1);
    }
}

namespace {

struct PairKey {
    Dyadic a, b;
    bool operator==(const PairKey& o) const { return a == o.a && b == o.b; }
};

struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const {
        return static_cast<std::size_t>(hash_mix(hash_dyadic(k.a), hash_dyadic(k.b)));
    }
};

struct DyadicHash {
    std::size_t operator()(const Dyadic& d) const {
        return static_cast<std::size_t>(hash_dyadic(d));
    }
};

// Write-once caches shared by all threads.  A fill that loses a race simply
// rediscovers the same value, so last-write-wins is harmless.
template <typename K, typename V, typename H>
class Memo {
public:
    std::optional<V> find(const K& k) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(k);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }
    void store(const K& k, const V& v, std::size_t cap) {
        std::lock_guard<std::mutex> lock(mu_);
        if (cap != 0 && map_.size() >= cap) return;
        map_.emplace(k, v);
    }
    void clear() {
        std::lock_guard<std::mutex> lock(mu_);
        map_.clear();
    }

private:
    std::mutex mu_;
    std::unordered_map<K, V, H> map_;
};

std::atomic<std::size_t> g_memo_cap{0};

Memo<PairKey, bool, PairKeyHash>& leq_memo() {
    static Memo<PairKey, bool, PairKeyHash> m;
    return m;
}
Memo<PairKey, Dyadic, PairKeyHash>& add_memo() {
    static Memo<PairKey, Dyadic, PairKeyHash> m;
    return m;
}
Memo<PairKey, Dyadic, PairKeyHash>& mul_memo() {
    static Memo<PairKey, Dyadic, PairKeyHash> m;
    return m;
}

// Nearest ancestors of a: the longest proper prefixes of a's sign sequence
// lying below / above a.  These are the extremes of the canonical cut, and
// {max L_a | min R_a} is mutually cofinal with it, so the operation
// recursions may use just these two options.
struct Parents {
    std::optional<Dyadic> lo, hi;
};

Parents parents_of(const Dyadic& a) {
    Parents p;
    SignSeq s = SignSeq::encode(a);
    Dyadic v;  // decode of the growing prefix, maintained incrementally
    Dyadic step(BigInt(1));
    bool fractional = false;
    for (std::size_t i = 0; i < s.length(); ++i) {
        // v currently decodes the length-i prefix.
        if (v < a) {
            if (!p.lo || *p.lo < v) p.lo = v;
        } else if (a < v) {
            if (!p.hi || v < *p.hi) p.hi = v;
        }
        Sign sig = s.signs()[i];
        if (!fractional && i > 0 && sig != s.signs()[0]) {
            fractional = true;
            step = Dyadic(BigInt(1), 1);
        } else if (fractional) {
            step = Dyadic(step.numerator(), step.log2_denominator() + 1);
        }
        v = sig == Sign::Plus ? v + step : v - step;
    }
    return p;
}

Dyadic resolve(std::vector<Dyadic> left, std::vector<Dyadic> right) {
    return simplest_between(CutExpr(std::move(left), std::move(right)));
}

}  // namespace

bool genetic_leq(const Dyadic& a, const Dyadic& b) {
    if (a == b) return true;
    PairKey key{a, b};
    if (auto hit = leq_memo().find(key)) return *hit;
    Parents pa = parents_of(a);
    Parents pb = parents_of(b);
    bool ok = true;
    if (pa.lo && genetic_leq(b, *pa.lo)) ok = false;  // some a^L >= b
    if (ok && pb.hi && genetic_leq(*pb.hi, a)) ok = false;  // some b^R <= a
    leq_memo().store(key, ok, g_memo_cap.load());
    return ok;
}

CutExpr canonical_cut(const Dyadic& a) {
    SignSeq s = SignSeq::encode(a);
    std::vector<Dyadic> left, right;
    for (std::size_t n = 0; n < s.length(); ++n) {
        std::vector<Sign> prefix(s.signs().begin(), s.signs().begin() + n);
        Dyadic v = SignSeq(std::move(prefix)).decode();
        if (v < a)
            left.push_back(v);
        else
            right.push_back(v);
    }
    return CutExpr(std::move(left), std::move(right));
}

Dyadic genetic_neg(const Dyadic& a) {
    // Negation flips every sign; via options: -a = { -a^R | -a^L }.
    return SignSeq::encode(a).flipped().decode();
}

Dyadic genetic_add(const Dyadic& a, const Dyadic& b) {
    PairKey key{a, b};
    if (auto hit = add_memo().find(key)) return *hit;
    Parents pa = parents_of(a);
    Parents pb = parents_of(b);
    std::vector<Dyadic> left, right;
    if (pa.lo) left.push_back(genetic_add(*pa.lo, b));
    if (pb.lo) left.push_back(genetic_add(a, *pb.lo));
    if (pa.hi) right.push_back(genetic_add(*pa.hi, b));
    if (pb.hi) right.push_back(genetic_add(a, *pb.hi));
    Dyadic r = resolve(std::move(left), std::move(right));
    add_memo().store(key, r, g_memo_cap.load());
    return r;
}

Dyadic genetic_mul(const Dyadic& a, const Dyadic& b) {
    PairKey key{a, b};
    if (auto hit = mul_memo().find(key)) return *hit;
    Parents pa = parents_of(a);
    Parents pb = parents_of(b);

    // One option per (a', b') pair of nearest ancestors:
    //   a'b + ab' - a'b', landing left for LL/RR pairs and right for LR/RL.
    auto option = [&](const Dyadic& ao, const Dyadic& bo) {
        Dyadic t1 = genetic_mul(ao, b);
        Dyadic t2 = genetic_mul(a, bo);
        Dyadic t3 = genetic_mul(ao, bo);
        return genetic_add(genetic_add(t1, t2), genetic_neg(t3));
    };

    std::vector<Dyadic> left, right;
    if (pa.lo && pb.lo) left.push_back(option(*pa.lo, *pb.lo));
    if (pa.hi && pb.hi) left.push_back(option(*pa.hi, *pb.hi));
    if (pa.lo && pb.hi) right.push_back(option(*pa.lo, *pb.hi));
    if (pa.hi && pb.lo) right.push_back(option(*pa.hi, *pb.lo));
    Dyadic r = resolve(std::move(left), std::move(right));
    mul_memo().store(key, r, g_memo_cap.load());
    return r;
}

bool is_cofinal(const CutExpr& fine, const CutExpr& coarse) {
    for (const Dyadic& l : coarse.left()) {
        bool matched = false;
        for (const Dyadic& lf : fine.left())
            if (l <= lf) { matched = true; break; }
        if (!matched) return false;
    }
    for (const Dyadic& r : coarse.right()) {
        bool matched = false;
        for (const Dyadic& rf : fine.right())
            if (rf <= r) { matched = true; break; }
        if (!matched) return false;
    }
    return true;
}

void set_genetic_memo_cap(std::size_t entries) { g_memo_cap.store(entries); }

void clear_genetic_memos() {
    leq_memo().clear();
    add_memo().clear();
    mul_memo().clear();
}

}  // namespace surreal
