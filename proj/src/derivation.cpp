#include "surreal/derivation.hpp"

#include <mutex>
#include <unordered_map>
#include <utility>

#include "surreal/explog.hpp"

namespace surreal {

namespace {

std::vector<Term> complete_terms(const Value& v, const char* who) {
    std::vector<Term> out;
    for (std::size_t i = 0;; ++i) {
        Value::Fetch f = v.fetch(i);
        if (f.status == TermStatus::End) return out;
        if (f.status == TermStatus::Unknown)
            throw WorkLimitError(std::string(who) + ": support not proven finite");
        out.push_back(*f.term);
    }
}

std::optional<long> monomial_ladder_index(const Value& a) {
    // Matches a = w^m with coefficient 1 and integer m <= 0; w^a is then the
    // |m|-fold iterated log of w (m = 0 gives w itself).
    Value::Fetch f = a.fetch(0);
    if (f.status != TermStatus::Got || a.fetch(1).status != TermStatus::End)
        return std::nullopt;
    if (f.term->coeff != 1) return std::nullopt;
    const Value& e = f.term->exp;
    if (e.is_zero()) return 0;
    Value::Fetch g = e.fetch(0);
    if (g.status != TermStatus::Got || e.fetch(1).status != TermStatus::End)
        return std::nullopt;
    if (!g.term->exp.is_zero()) return std::nullopt;
    if (boost::multiprecision::denominator(g.term->coeff) != 1) return std::nullopt;
    long m = static_cast<long>(boost::multiprecision::numerator(g.term->coeff));
    return m <= 0 ? std::optional<long>(m) : std::nullopt;
}

// D(w^(w^m)) for m <= 0: w^-(w^0 + w^-1 + ... + w^(m+1)), and 1 at m = 0.
Value ladder_derivative(long m) {
    std::vector<Term> exps;
    for (long k = 0; k > m; --k) exps.push_back(Term{Value::from_int(k), Coeff(-1)});
    if (exps.empty()) return Value::one();
    return Value::monomial(Value::from_terms(std::move(exps)), Coeff(1));
}

class MonoMemo {
  public:
    std::optional<Value> find(const Value& a) {
        std::uint64_t h = a.hash();
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(h);
        if (it == map_.end()) return std::nullopt;
        for (const auto& [key, val] : it->second)
            if (equal_exact(key, a)) return val;
        return std::nullopt;
    }
    void store(const Value& a, const Value& v) {
        std::uint64_t h = a.hash();
        std::lock_guard<std::mutex> lock(mu_);
        map_[h].emplace_back(a, v);
    }

  private:
    std::mutex mu_;
    std::unordered_map<std::uint64_t, std::vector<std::pair<Value, Value>>> map_;
};

MonoMemo& mono_memo() {
    static MonoMemo memo;
    return memo;
}

// D(w^a), always a finite term list.
Value derive_monomial(const Value& a) {
    if (a.is_eps0_atom())
        throw DomainError("derive: eps0 has no derivative in this fragment");
    if (a.is_zero()) return Value::zero();
    if (std::optional<long> m = monomial_ladder_index(a)) return ladder_derivative(*m);
    if (std::optional<Value> hit = mono_memo().find(a)) return *hit;
    Value sum = Value::zero();
    for (const Term& t : complete_terms(a, "derive"))
        sum = nf_add(sum, nf_scale(derive_monomial(h_map(t.exp)), t.coeff));
    Value out = nf_scale_monomial(sum, a, Coeff(1));
    mono_memo().store(a, out);
    return out;
}

}  // namespace

Value monomial_log_derivative(const Value& f) {
    Value sum = Value::zero();
    for (const Term& t : complete_terms(f, "log_derivative"))
        sum = nf_add(sum, nf_scale(derive_monomial(h_map(t.exp)), t.coeff));
    return sum;
}

DerivationResult derive(const Value& x) {
    if (x.known_finite()) {
        Value sum = Value::zero();
        for (const Term& t : complete_terms(x, "derive"))
            sum = nf_add(sum, nf_scale(derive_monomial(t.exp), t.coeff));
        return {std::move(sum), true};
    }
    Value out = ladder_sum([x](std::size_t k) -> std::optional<Value> {
        Value::Fetch f = x.fetch(k);
        if (f.status == TermStatus::End) return std::nullopt;
        if (f.status == TermStatus::Unknown)
            throw WorkLimitError("derive: input stream unresolved");
        return nf_scale(derive_monomial(f.term->exp), f.term->coeff);
    });
    return {std::move(out), false};
}

Value d_log_atomic(int level) {
    if (level > 30 || level < -30)
        throw DomainError("d_log_atomic: level outside the exp/log ladder range");
    if (level <= 0) return ladder_derivative(level);
    // D(exp_n(w)) = product of the towers below it: w^(lambda_0 + ... + lambda_(n-1)).
    Value exp_sum = Value::zero();
    for (int k = 0; k < level; ++k) exp_sum = nf_add(exp_sum, lambda_of_level(k));
    return omega_map(exp_sum);
}

namespace {

struct Candidate {
    Value exponent;
    Coeff coeff;
};

// Candidate from the slot rule, for a lead exponent e with no positive part:
// walk the coefficients t_k of w^-k inside e, find the first t_n != -1, and
// propose f = e + sum_(k<=n) w^-k with coefficient r / (t_n + 1).
Candidate slot_candidate(const Value& e, const Coeff& r) {
    std::vector<Term> terms = complete_terms(e, "integrate");
    auto slot = [&terms](long k) {
        for (const Term& t : terms) {
            if (t.exp.is_zero()) {
                if (k == 0) return t.coeff;
                continue;
            }
            Value::Fetch f = t.exp.fetch(0);
            if (f.status == TermStatus::Got && f.term->exp.is_zero() &&
                t.exp.fetch(1).status == TermStatus::End &&
                f.term->coeff == Coeff(-k))
                return t.coeff;
        }
        return Coeff(0);
    };
    long n = 0;
    while (slot(n) == -1) ++n;
    Value f = e;
    for (long k = 0; k <= n; ++k)
        f = nf_add(f, Value::monomial(Value::from_int(-k), Coeff(1)));
    return {std::move(f), r / (slot(n) + 1)};
}

// Candidate for a lead exponent with a positive part: fixed point of
// f = e - leadexp(D(w^f)/w^f), then match the leading coefficient.
std::optional<Candidate> fixed_point_candidate(const Value& e, const Coeff& r) {
    Value f = e;
    for (int i = 0; i < 8; ++i) {
        Value ld = monomial_log_derivative(f);
        Value::Fetch lead = ld.fetch(0);
        if (lead.status != TermStatus::Got) return std::nullopt;
        Value next = nf_sub(e, lead.term->exp);
        if (equal_exact(next, f)) return Candidate{std::move(f), r / lead.term->coeff};
        f = std::move(next);
    }
    return std::nullopt;
}

bool has_positive_part(const Value& e) {
    Value::Fetch f = e.fetch(0);
    return f.status == TermStatus::Got &&
           compare_exact(f.term->exp, Value::zero()) == Ordering::Greater;
}

// Does D(w^f * s) start exactly with w^e * r?
bool verify_candidate(const Candidate& c, const Value& e, const Coeff& r,
                      Value& out_derivative) {
    try {
        out_derivative = derive(Value::monomial(c.exponent, c.coeff)).value;
    } catch (const DomainError&) {
        return false;
    }
    Value::Fetch lead = out_derivative.fetch(0);
    if (lead.status != TermStatus::Got) return false;
    return equal_exact(lead.term->exp, e) && lead.term->coeff == r;
}

}  // namespace

IntegrateResult asymptotic_integrate(const Value& x, int max_rounds) {
    Value acc = Value::zero();
    Value residual = x;
    int rounds = 0;
    while (rounds < max_rounds) {
        Value::Fetch f = residual.fetch(0);
        if (f.status == TermStatus::End) return {std::move(acc), true, rounds};
        if (f.status == TermStatus::Unknown) break;
        const Value e = f.term->exp;
        const Coeff r = f.term->coeff;

        std::vector<Candidate> candidates;
        if (has_positive_part(e)) {
            if (auto c = fixed_point_candidate(e, r)) candidates.push_back(*c);
        } else {
            candidates.push_back(slot_candidate(e, r));
            if (auto c = fixed_point_candidate(e, r)) candidates.push_back(*c);
        }

        bool advanced = false;
        for (const Candidate& c : candidates) {
            Value dc;
            if (!verify_candidate(c, e, r, dc)) continue;
            acc = nf_add(acc, Value::monomial(c.exponent, c.coeff));
            residual = nf_sub(residual, dc);
            advanced = true;
            break;
        }
        if (!advanced) {
            if (rounds == 0)
                throw DomainError("integrate: no candidate matches the leading term");
            break;
        }
        ++rounds;
    }
    if (rounds == max_rounds) {
        Value::Fetch f = residual.fetch(0);
        if (f.status == TermStatus::End) return {std::move(acc), true, rounds};
    }
    return {std::move(acc), false, rounds};
}

AxiomReport check_derivation_axioms(const std::vector<Value>& samples, int depth) {
    AxiomReport report;
    auto lead = [](const Value& v) { return v.fetch(0); };
    for (std::size_t i = 0; i + 1 < samples.size(); i += 2) {
        const Value& x = samples[i];
        const Value& y = samples[i + 1];
        ++report.pairs;
        Value dx = derive(x).value;
        Value dy = derive(y).value;

        PrefixCheck add = prefix_equal(derive(nf_add(x, y)).value,
                                       nf_add(dx, dy), depth);
        if (!add.ok) ++report.additivity_failures;

        Value lhs = derive(nf_mul(x, y)).value;
        Value rhs = nf_add(nf_mul(dx, y), nf_mul(x, dy));
        PrefixCheck leib = prefix_equal(lhs, rhs, depth);
        if (!leib.ok) ++report.leibniz_failures;

        for (const Value* v : {&x, &y}) {
            Value::Fetch fv = lead(*v);
            if (fv.status != TermStatus::Got) continue;
            Ordering sign = compare_exact(fv.term->exp, Value::zero());
            Value dv = derive(*v).value;
            Value::Fetch fd = lead(dv);
            if (fd.status == TermStatus::Unknown) continue;
            if (sign == Ordering::Greater && fv.term->coeff > 0) {
                // positive infinite: derivative must be positive
                if (fd.status == TermStatus::End || fd.term->coeff < 0)
                    ++report.positivity_failures;
            } else if (sign == Ordering::Less) {
                // infinitesimal: derivative must be infinitesimal
                if (fd.status == TermStatus::Got &&
                    compare_exact(fd.term->exp, Value::zero()) != Ordering::Less)
                    ++report.small_failures;
            }
        }
    }
    return report;
}

}  // namespace surreal
