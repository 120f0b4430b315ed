#include "surreal/testkit.hpp"

#include <algorithm>

namespace surreal::testkit {

std::vector<Dyadic> enumerate_dyadics(int max_birthday) {
    if (max_birthday < 0 || max_birthday > 16)
        throw DomainError("enumerate_dyadics: max_birthday must be in [0, 16]");
    std::vector<Dyadic> out;
    out.emplace_back();
    // k = 0: integers n with |n| <= b.  k >= 1: odd p with |p| <= (b-k)*2^k.
    for (long n = 1; n <= max_birthday; ++n) {
        out.emplace_back(BigInt(n));
        out.emplace_back(BigInt(-n));
    }
    for (int k = 1; k < max_birthday; ++k) {
        BigInt limit = BigInt(max_birthday - k) << k;
        for (BigInt p = 1; p <= limit; p += 2) {
            out.emplace_back(p, k);
            out.emplace_back(-p, k);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// All dyadics born exactly at level `depth`, unsorted.
std::vector<Dyadic> level(int depth) {
    std::vector<Dyadic> out;
    if (depth == 0) {
        out.emplace_back();
        return out;
    }
    out.emplace_back(BigInt(depth));
    out.emplace_back(BigInt(-depth));
    for (int k = 1; k < depth; ++k) {
        BigInt lo = (BigInt(depth - k - 1) << k) + 1;
        BigInt hi = BigInt(depth - k) << k;
        for (BigInt p = lo; p <= hi; p += 2) {
            out.emplace_back(p, k);
            out.emplace_back(-p, k);
        }
    }
    return out;
}

bool strictly_inside(const Dyadic& x, const std::vector<Dyadic>& left,
                     const std::vector<Dyadic>& right) {
    for (const Dyadic& l : left)
        if (!(l < x)) return false;
    for (const Dyadic& r : right)
        if (!(x < r)) return false;
    return true;
}

}  // namespace

Dyadic tree_search_simplest(const std::vector<Dyadic>& left,
                            const std::vector<Dyadic>& right,
                            int max_depth) {
    for (const Dyadic& l : left)
        for (const Dyadic& r : right)
            if (!(l < r)) throw CutViolation("tree_search_simplest: left must be < right");
    for (int d = 0; d <= max_depth; ++d) {
        for (const Dyadic& x : level(d))
            if (strictly_inside(x, left, right)) return x;
    }
    throw WorkLimitError("tree_search_simplest: no dyadic found within depth limit");
}

FragmentSampler::FragmentSampler(SamplerConfig config)
    : config_(config), state_(config.seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL) {}

std::uint64_t FragmentSampler::next() {
    // splitmix64 step: fixed algorithm, no library dependence.
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

long FragmentSampler::draw(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

Coeff FragmentSampler::draw_coeff(bool nonzero) {
    long bound = config_.coefficient_bound;
    long num = draw(-bound, bound);
    while (nonzero && num == 0) num = draw(-bound, bound);
    long den = draw(0, 3);  // denominators 1, 2, 3, 4
    return Coeff(num, den + 1);
}

Value FragmentSampler::draw_exponent(int depth) {
    // The w^-k shape is fine at the top of a term but must not nest inside
    // another exponent: the log of such a monomial needs h of an
    // infinitesimal, which the fragment cannot express.
    switch (draw(0, depth > 0 ? 3 : 1)) {
        case 0:
            return Value::from_int(draw(-3, 3));
        case 1: {
            // dyadic in (0, 1)
            long k = draw(1, 3);
            long p = draw(1, (1L << k) - 1) | 1;
            return Value::from_rational(Coeff(p, 1L << k));
        }
        case 2:
            return Value::monomial(Value::from_int(draw(-3, -1)), Coeff(1));
        default: {
            // w^e*c + m with m >= 1, which keeps the whole draw at or
            // above 1 no matter how small the head lands
            Value inner;
            switch (draw(0, depth > 1 ? 2 : 1)) {
                case 0:
                    inner = Value::from_int(draw(-3, 3));
                    break;
                case 1: {
                    long k = draw(1, 3);
                    long p = draw(1, (1L << k) - 1) | 1;
                    inner = Value::from_rational(Coeff(p, 1L << k));
                    break;
                }
                default:
                    inner = draw_exponent(depth - 2);
                    if (compare_exact(inner, Value::one()) == Ordering::Less)
                        inner = nf_add(inner, Value::omega());
                    break;
            }
            Value head = Value::monomial(inner, Coeff(draw(1, 3)));
            return nf_add(head, Value::from_int(draw(1, 2)));
        }
    }
}

Value FragmentSampler::draw_terms(int sign_mode) {
    int count = static_cast<int>(draw(sign_mode == 0 ? 0 : 1, config_.max_terms));
    std::vector<Term> pool;
    for (int i = 0; i < count; ++i) {
        Value e = draw_exponent(config_.max_exponent_depth);
        Ordering s = compare_exact(e, Value::zero());
        if (sign_mode > 0 && s != Ordering::Greater) e = nf_add(e, Value::omega());
        if (sign_mode < 0 && s != Ordering::Less)
            e = nf_sub(Value::from_int(-1), e);
        pool.push_back(Term{e, draw_coeff(true)});
    }
    // Deduplicate exponents and order them by folding through nf_add.
    Value acc = Value::zero();
    for (const Term& t : pool)
        acc = nf_add(acc, Value::monomial(t.exp, t.coeff));
    return acc;
}

Value FragmentSampler::sample() { return draw_terms(0); }

Value FragmentSampler::sample_nonzero() {
    for (int i = 0; i < 64; ++i) {
        Value v = draw_terms(0);
        if (!v.is_zero()) return v;
    }
    throw WorkLimitError("sampler: could not draw a nonzero value");
}

Value FragmentSampler::sample_exp_ready() {
    Value v = draw_terms(0);
    Decomposition d = additive_decompose(v);
    return nf_add(d.purely_infinite, d.infinitesimal);
}

Value FragmentSampler::sample_purely_infinite() {
    for (int i = 0; i < 64; ++i) {
        Value v = draw_terms(1);
        if (!v.is_zero()) return v;
    }
    throw WorkLimitError("sampler: could not draw a purely infinite value");
}

Value FragmentSampler::sample_infinitesimal() {
    for (int i = 0; i < 64; ++i) {
        Value v = draw_terms(-1);
        if (!v.is_zero()) return v;
    }
    throw WorkLimitError("sampler: could not draw an infinitesimal");
}

Dyadic FragmentSampler::sample_dyadic(int max_birthday) {
    int k = static_cast<int>(draw(0, max_birthday));
    if (k == 0) return Dyadic(BigInt(draw(-max_birthday, max_birthday)));
    long limit = (static_cast<long>(max_birthday - k) << k);
    if (limit < 1) return Dyadic(BigInt(draw(-1, 1)));
    long p = 2 * draw(0, (limit - 1) / 2) + 1;  // odd, within the limit
    if (draw(0, 1) == 1) p = -p;
    return Dyadic(BigInt(p), k);
}

}  // namespace surreal::testkit
