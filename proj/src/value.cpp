#include "surreal/value.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <unordered_set>
#include <utility>

namespace surreal {

namespace detail {

// Iterations a generator may spend inside one materialization request.  This
// is what turns an endless cancellation run (all candidate terms summing to
// zero) into an Unknown answer instead of a hang.  Cancellation rounds in
// merges, products and ladder sums force ever deeper terms of the input
// streams, so their cap must stay small; plain scans are cheap per step and
// get a generous one.
constexpr int kCancelCap = 64;
constexpr int kPullCap = 20000;

struct TermSource {
    virtual ~TermSource() = default;
    virtual std::optional<Term> next() = 0;
};

struct StreamState {
    std::mutex mu;
    std::deque<Term> prefix;  // deque: element references survive growth
    std::unique_ptr<TermSource> source;
    bool done = false;     // source proved End
    bool unknown = false;  // source gave up; sticky, the caps are deterministic
    bool known_finite_hint = false;
};

struct Node {
    enum class Kind { Finite, Stream, Eps0 } kind = Kind::Finite;
    std::vector<Term> terms;
    std::shared_ptr<StreamState> stream;
};

}  // namespace detail

using detail::Node;
using detail::StreamState;
using detail::TermSource;

namespace {

const std::shared_ptr<const Node>& zero_node() {
    static const std::shared_ptr<const Node> n = std::make_shared<Node>();
    return n;
}

const std::shared_ptr<const Node>& eps0_node() {
    static const std::shared_ptr<const Node> n = [] {
        auto m = std::make_shared<Node>();
        m->kind = Node::Kind::Eps0;
        return m;
    }();
    return n;
}

// The atom viewed as a term list: eps0 = w^eps0 * 1.
const Term& eps0_term() {
    static const Term t{Value::eps0(), Coeff(1)};
    return t;
}

}  // namespace

Value::Value() : node_(zero_node()) {}
Value::Value(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Value stream_value(std::shared_ptr<StreamState> s) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Stream;
    n->stream = std::move(s);
    return Value(std::move(n));
}

namespace {

Value make_stream(std::unique_ptr<TermSource> src, bool known_finite = false) {
    auto st = std::make_shared<StreamState>();
    st->source = std::move(src);
    st->known_finite_hint = known_finite;
    return stream_value(std::move(st));
}

}  // namespace

Value Value::zero() { return Value(); }

Value Value::one() { return from_rational(Coeff(1)); }

Value Value::omega() { return monomial(one(), Coeff(1)); }

Value Value::eps0() { return Value(eps0_node()); }

Value Value::from_rational(const Coeff& c) {
    if (c == 0) return zero();
    auto n = std::make_shared<Node>();
    n->terms.push_back(Term{zero(), c});
    return Value(std::move(n));
}

Value Value::from_int(long v) { return from_rational(Coeff(v)); }

Value Value::monomial(const Value& exp, const Coeff& coeff) {
    std::vector<Term> t;
    t.push_back(Term{exp, coeff});
    return from_terms(std::move(t));
}

Value Value::from_terms(std::vector<Term> terms) {
    for (const Term& t : terms) {
        if (t.coeff == 0) throw DomainError("normal form: zero coefficient term");
        if (!t.exp.known_finite())
            throw DomainError("normal form: exponents must be hereditarily finite");
    }
    for (std::size_t i = 0; i + 1 < terms.size(); ++i)
        if (compare_exact(terms[i].exp, terms[i + 1].exp) != Ordering::Greater)
            throw DomainError("normal form: exponents must be strictly decreasing");
    if (terms.size() == 1 && terms[0].coeff == 1 && terms[0].exp.is_eps0_atom())
        return eps0();  // w^eps0 * 1 is the atom itself
    auto n = std::make_shared<Node>();
    n->terms = std::move(terms);
    return Value(std::move(n));
}

bool Value::is_eps0_atom() const { return node_->kind == Node::Kind::Eps0; }

bool Value::known_finite() const { return node_->kind != Node::Kind::Stream; }

bool Value::is_zero() const {
    return node_->kind == Node::Kind::Finite && node_->terms.empty();
}

Value::Fetch Value::fetch(std::size_t i) const {
    switch (node_->kind) {
        case Node::Kind::Finite:
            if (i < node_->terms.size()) return {TermStatus::Got, &node_->terms[i]};
            return {TermStatus::End, nullptr};
        case Node::Kind::Eps0:
            if (i == 0) return {TermStatus::Got, &eps0_term()};
            return {TermStatus::End, nullptr};
        case Node::Kind::Stream:
            break;
    }
    StreamState& st = *node_->stream;
    std::lock_guard<std::mutex> lock(st.mu);
    while (st.prefix.size() <= i && !st.done && !st.unknown) {
        try {
            std::optional<Term> t = st.source->next();
            if (!t) {
                st.done = true;
                st.source.reset();
                break;
            }
            if (t->coeff == 0)
                throw MalformedStream("stream produced a zero coefficient");
            if (!st.prefix.empty() &&
                compare_exact(t->exp, st.prefix.back().exp) != Ordering::Less)
                throw MalformedStream("stream exponents must strictly decrease");
            st.prefix.push_back(std::move(*t));
        } catch (const WorkLimitError&) {
            st.unknown = true;
        }
    }
    if (i < st.prefix.size()) return {TermStatus::Got, &st.prefix[i]};
    return {st.done ? TermStatus::End : TermStatus::Unknown, nullptr};
}

Value::TakeResult Value::take(std::size_t k) const {
    TakeResult out{{}, false, false};
    for (std::size_t i = 0; i < k; ++i) {
        Fetch f = fetch(i);
        if (f.status == TermStatus::Got) {
            out.terms.push_back(*f.term);
        } else {
            out.complete = f.status == TermStatus::End;
            out.unknown = f.status == TermStatus::Unknown;
            return out;
        }
    }
    // k terms delivered; peek whether the support stops exactly here.
    Fetch f = fetch(k);
    out.complete = f.status == TermStatus::End;
    out.unknown = f.status == TermStatus::Unknown;
    return out;
}

std::uint64_t Value::hash() const {
    switch (node_->kind) {
        case Node::Kind::Eps0:
            return 0x9e0e0e0e0e0e0e0eULL;
        case Node::Kind::Stream:
            throw DomainError("hash: defined for hereditarily finite values only");
        case Node::Kind::Finite:
            break;
    }
    std::uint64_t h = 0x517cc1b727220a95ULL;
    for (const Term& t : node_->terms)
        h = hash_mix(hash_mix(h, t.exp.hash()), hash_rational(t.coeff));
    return h;
}

Ordering compare_exact(const Value& a, const Value& b) {
    if (!a.known_finite() || !b.known_finite())
        throw DomainError("compare_exact: arguments must be hereditarily finite");
    if (a.is_eps0_atom() && b.is_eps0_atom()) return Ordering::Equal;
    for (std::size_t i = 0;; ++i) {
        Value::Fetch fa = a.fetch(i);
        Value::Fetch fb = b.fetch(i);
        if (fa.status == TermStatus::End && fb.status == TermStatus::End)
            return Ordering::Equal;
        if (fa.status == TermStatus::End)
            return fb.term->coeff > 0 ? Ordering::Less : Ordering::Greater;
        if (fb.status == TermStatus::End)
            return fa.term->coeff > 0 ? Ordering::Greater : Ordering::Less;
        Ordering e = compare_exact(fa.term->exp, fb.term->exp);
        if (e == Ordering::Greater)
            return fa.term->coeff > 0 ? Ordering::Greater : Ordering::Less;
        if (e == Ordering::Less)
            return fb.term->coeff > 0 ? Ordering::Less : Ordering::Greater;
        if (fa.term->coeff != fb.term->coeff)
            return fa.term->coeff < fb.term->coeff ? Ordering::Less : Ordering::Greater;
    }
}

bool equal_exact(const Value& a, const Value& b) {
    return compare_exact(a, b) == Ordering::Equal;
}

CompareResult nf_compare(const Value& a, const Value& b, int budget) {
    for (int i = 0; i < budget; ++i) {
        Value::Fetch fa = a.fetch(static_cast<std::size_t>(i));
        Value::Fetch fb = b.fetch(static_cast<std::size_t>(i));
        if (fa.status == TermStatus::Unknown || fb.status == TermStatus::Unknown)
            return CompareResult::UNDECIDED;
        if (fa.status == TermStatus::End && fb.status == TermStatus::End)
            return CompareResult::EQ;
        if (fa.status == TermStatus::End)
            return fb.term->coeff > 0 ? CompareResult::LT : CompareResult::GT;
        if (fb.status == TermStatus::End)
            return fa.term->coeff > 0 ? CompareResult::GT : CompareResult::LT;
        Ordering e = compare_exact(fa.term->exp, fb.term->exp);
        if (e == Ordering::Greater)
            return fa.term->coeff > 0 ? CompareResult::GT : CompareResult::LT;
        if (e == Ordering::Less)
            return fb.term->coeff > 0 ? CompareResult::LT : CompareResult::GT;
        if (fa.term->coeff != fb.term->coeff)
            return fa.term->coeff < fb.term->coeff ? CompareResult::LT
                                                   : CompareResult::GT;
    }
    return CompareResult::UNDECIDED;
}

PrefixCheck prefix_equal(const Value& a, const Value& b, int k) {
    PrefixCheck out{true, 0, false};
    for (int i = 0; i < k; ++i) {
        Value::Fetch fa = a.fetch(static_cast<std::size_t>(i));
        Value::Fetch fb = b.fetch(static_cast<std::size_t>(i));
        if (fa.status == TermStatus::Unknown || fb.status == TermStatus::Unknown)
            return out;
        if (fa.status == TermStatus::End && fb.status == TermStatus::End) {
            out.complete = true;
            return out;
        }
        if (fa.status != fb.status) {  // a real term against a proven End
            out.ok = false;
            return out;
        }
        if (!equal_exact(fa.term->exp, fb.term->exp) ||
            fa.term->coeff != fb.term->coeff) {
            out.ok = false;
            return out;
        }
        ++out.compared;
    }
    return out;
}

namespace {

// Term list view of a known-finite value (the atom expands one level).
std::vector<Term> finite_terms(const Value& v) {
    std::vector<Term> out;
    for (std::size_t i = 0;; ++i) {
        Value::Fetch f = v.fetch(i);
        if (f.status != TermStatus::Got) {
            if (f.status == TermStatus::Unknown)
                throw DomainError("expected a finite value");
            return out;
        }
        out.push_back(*f.term);
    }
}

struct ExpGreater {
    bool operator()(const Value& a, const Value& b) const {
        return compare_exact(a, b) == Ordering::Greater;
    }
};

Value add_finite(const Value& a, const Value& b) {
    std::vector<Term> ta = finite_terms(a), tb = finite_terms(b), out;
    std::size_t i = 0, j = 0;
    while (i < ta.size() || j < tb.size()) {
        if (i == ta.size()) {
            out.push_back(tb[j++]);
        } else if (j == tb.size()) {
            out.push_back(ta[i++]);
        } else {
            Ordering c = compare_exact(ta[i].exp, tb[j].exp);
            if (c == Ordering::Greater) {
                out.push_back(ta[i++]);
            } else if (c == Ordering::Less) {
                out.push_back(tb[j++]);
            } else {
                Coeff s = ta[i].coeff + tb[j].coeff;
                if (s != 0) out.push_back(Term{ta[i].exp, s});
                ++i;
                ++j;
            }
        }
    }
    return Value::from_terms(std::move(out));
}

struct MergeAddGen : TermSource {
    Value x, y;
    std::size_t i = 0, j = 0;
    MergeAddGen(Value x_, Value y_) : x(std::move(x_)), y(std::move(y_)) {}

    std::optional<Term> next() override {
        for (int iter = 0; iter < detail::kCancelCap; ++iter) {
            Value::Fetch fx = x.fetch(i);
            Value::Fetch fy = y.fetch(j);
            if (fx.status == TermStatus::Unknown || fy.status == TermStatus::Unknown)
                throw WorkLimitError("merge: input stream unresolved");
            if (fx.status == TermStatus::End && fy.status == TermStatus::End)
                return std::nullopt;
            if (fx.status == TermStatus::End) {
                Term t = *fy.term;
                ++j;
                return t;
            }
            if (fy.status == TermStatus::End) {
                Term t = *fx.term;
                ++i;
                return t;
            }
            Ordering c = compare_exact(fx.term->exp, fy.term->exp);
            if (c == Ordering::Greater) {
                Term t = *fx.term;
                ++i;
                return t;
            }
            if (c == Ordering::Less) {
                Term t = *fy.term;
                ++j;
                return t;
            }
            Coeff s = fx.term->coeff + fy.term->coeff;
            Value e = fx.term->exp;
            ++i;
            ++j;
            if (s != 0) return Term{std::move(e), std::move(s)};
        }
        throw WorkLimitError("merge: cancellation ran past the work cap");
    }
};

struct ScaleGen : TermSource {
    Value src;
    std::size_t i;
    bool shifted;
    Value shift;
    Coeff scale;
    ScaleGen(Value src_, std::size_t start, bool shifted_, Value shift_, Coeff scale_)
        : src(std::move(src_)), i(start), shifted(shifted_),
          shift(std::move(shift_)), scale(std::move(scale_)) {}

    std::optional<Term> next() override {
        Value::Fetch f = src.fetch(i);
        if (f.status == TermStatus::End) return std::nullopt;
        if (f.status == TermStatus::Unknown)
            throw WorkLimitError("scale: input stream unresolved");
        ++i;
        Value e = shifted ? add_finite(f.term->exp, shift) : f.term->exp;
        return Term{std::move(e), f.term->coeff * scale};
    }
};

struct CauchyMulGen : TermSource {
    Value x, y;
    std::map<Value, std::vector<std::pair<std::size_t, std::size_t>>, ExpGreater>
        frontier;
    std::unordered_set<std::uint64_t> seen;
    bool init = false;

    CauchyMulGen(Value x_, Value y_) : x(std::move(x_)), y(std::move(y_)) {}

    void push(std::size_t i, std::size_t j) {
        std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | j;
        if (!seen.insert(key).second) return;
        Value::Fetch fx = x.fetch(i);
        Value::Fetch fy = y.fetch(j);
        if (fx.status == TermStatus::Unknown || fy.status == TermStatus::Unknown)
            throw WorkLimitError("product: input stream unresolved");
        if (fx.status == TermStatus::End || fy.status == TermStatus::End) return;
        frontier[add_finite(fx.term->exp, fy.term->exp)].push_back({i, j});
    }

    std::optional<Term> next() override {
        if (!init) {
            init = true;
            push(0, 0);
        }
        for (int iter = 0; iter < detail::kCancelCap; ++iter) {
            if (frontier.empty()) return std::nullopt;
            auto node = frontier.extract(frontier.begin());
            const Value& e = node.key();
            Coeff c(0);
            for (auto [i, j] : node.mapped())
                c += x.fetch(i).term->coeff * y.fetch(j).term->coeff;
            for (auto [i, j] : node.mapped()) {
                push(i + 1, j);
                push(i, j + 1);
            }
            if (c != 0) return Term{e, std::move(c)};
        }
        throw WorkLimitError("product: cancellation ran past the work cap");
    }
};

struct LongDivGen : TermSource {
    Value den;
    Term den_lead;
    Value rem;

    LongDivGen(Value num, Value den_, Term den_lead_)
        : den(std::move(den_)), den_lead(std::move(den_lead_)), rem(std::move(num)) {}

    std::optional<Term> next() override {
        Value::Fetch f = rem.fetch(0);
        if (f.status == TermStatus::End) return std::nullopt;  // exact quotient
        if (f.status == TermStatus::Unknown)
            throw WorkLimitError("division: remainder unresolved");
        Value qe = add_finite(f.term->exp, nf_neg(den_lead.exp));
        Coeff qc = f.term->coeff / den_lead.coeff;
        rem = nf_sub(rem, nf_scale_monomial(den, qe, qc));
        return Term{std::move(qe), std::move(qc)};
    }
};

// Merged sum of a family of values whose lead exponents strictly decrease.
struct LadderSumGen : TermSource {
    std::function<std::optional<Value>(std::size_t)> provider;
    std::vector<Value> active;
    std::vector<std::size_t> pos;
    std::optional<Value> pending;
    std::optional<Value> last_lead;
    std::size_t next_index = 0;
    bool more = true;

    explicit LadderSumGen(std::function<std::optional<Value>(std::size_t)> p)
        : provider(std::move(p)) {}

    // Loads the next summand that actually has a lead term.
    void ensure_pending() {
        int skipped = 0;
        while (!pending && more) {
            if (++skipped > detail::kCancelCap)
                throw WorkLimitError("ladder sum: too many empty summands");
            std::optional<Value> v = provider(next_index);
            ++next_index;
            if (!v) {
                more = false;
                return;
            }
            Value::Fetch f = v->fetch(0);
            if (f.status == TermStatus::Unknown)
                throw WorkLimitError("ladder sum: summand lead unresolved");
            if (f.status == TermStatus::End) continue;  // zero summand
            pending = std::move(*v);
        }
    }

    void activate() {
        Value lead = pending->fetch(0).term->exp;
        if (last_lead && compare_exact(lead, *last_lead) != Ordering::Less)
            throw MalformedStream("ladder sum: summand leads must strictly decrease");
        last_lead = lead;
        active.push_back(std::move(*pending));
        pending.reset();
    }

    std::optional<Term> next() override {
        for (int iter = 0; iter < detail::kCancelCap; ++iter) {
            // Current frontier maximum over active summands.
            std::optional<Value> m;
            for (std::size_t k = 0; k < active.size(); ++k) {
                Value::Fetch f = active[k].fetch(pos[k]);
                if (f.status == TermStatus::Unknown)
                    throw WorkLimitError("ladder sum: summand unresolved");
                if (f.status == TermStatus::End) continue;
                if (!m || compare_exact(f.term->exp, *m) == Ordering::Greater)
                    m = f.term->exp;
            }
            // Bring in summands whose leads still reach the frontier.
            ensure_pending();
            while (pending) {
                Value lead = pending->fetch(0).term->exp;
                if (m && compare_exact(lead, *m) == Ordering::Less) break;
                if (!m || compare_exact(lead, *m) == Ordering::Greater) m = lead;
                activate();
                pos.push_back(0);
                ensure_pending();
            }
            if (!m) return std::nullopt;  // everything exhausted
            Coeff c(0);
            for (std::size_t k = 0; k < active.size(); ++k) {
                Value::Fetch f = active[k].fetch(pos[k]);
                if (f.status == TermStatus::Got &&
                    compare_exact(f.term->exp, *m) == Ordering::Equal) {
                    c += f.term->coeff;
                    ++pos[k];
                }
            }
            if (c != 0) return Term{*m, std::move(c)};
        }
        throw WorkLimitError("ladder sum: cancellation ran past the work cap");
    }
};

struct CallbackGen : TermSource {
    std::function<std::optional<Term>()> fn;
    explicit CallbackGen(std::function<std::optional<Term>()> f) : fn(std::move(f)) {}
    std::optional<Term> next() override { return fn(); }
};

// Passes terms while exponents stay positive, then proves End.
struct InfinitePartGen : TermSource {
    Value src;
    std::size_t i = 0;
    explicit InfinitePartGen(Value s) : src(std::move(s)) {}
    std::optional<Term> next() override {
        Value::Fetch f = src.fetch(i);
        if (f.status == TermStatus::End) return std::nullopt;
        if (f.status == TermStatus::Unknown)
            throw WorkLimitError("decompose: input unresolved");
        if (compare_exact(f.term->exp, Value::zero()) != Ordering::Greater)
            return std::nullopt;
        ++i;
        return *f.term;
    }
};

// Skips down to the first negative exponent, then passes everything.
struct InfinitesimalPartGen : TermSource {
    Value src;
    std::size_t i = 0;
    bool inside = false;
    explicit InfinitesimalPartGen(Value s) : src(std::move(s)) {}
    std::optional<Term> next() override {
        for (int iter = 0; iter < detail::kPullCap; ++iter) {
            Value::Fetch f = src.fetch(i);
            if (f.status == TermStatus::End) return std::nullopt;
            if (f.status == TermStatus::Unknown)
                throw WorkLimitError("decompose: input unresolved");
            ++i;
            if (inside) return *f.term;
            if (compare_exact(f.term->exp, Value::zero()) == Ordering::Less) {
                inside = true;
                return *f.term;
            }
        }
        throw WorkLimitError("decompose: skip ran past the work cap");
    }
};

}  // namespace

Value nf_add(const Value& a, const Value& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.known_finite() && b.known_finite()) return add_finite(a, b);
    return make_stream(std::make_unique<MergeAddGen>(a, b));
}

Value nf_sub(const Value& a, const Value& b) { return nf_add(a, nf_neg(b)); }

Value nf_neg(const Value& a) { return nf_scale(a, Coeff(-1)); }

Value nf_scale(const Value& a, const Coeff& coeff) {
    if (coeff == 0 || a.is_zero()) return Value::zero();
    if (a.known_finite()) {
        std::vector<Term> out;
        for (const Term& t : finite_terms(a)) out.push_back(Term{t.exp, t.coeff * coeff});
        return Value::from_terms(std::move(out));
    }
    return make_stream(
        std::make_unique<ScaleGen>(a, 0, false, Value::zero(), coeff));
}

Value nf_scale_monomial(const Value& a, const Value& exp, const Coeff& coeff) {
    if (coeff == 0 || a.is_zero()) return Value::zero();
    if (!exp.known_finite())
        throw DomainError("scale: shift exponent must be hereditarily finite");
    if (a.known_finite()) {
        std::vector<Term> out;
        for (const Term& t : finite_terms(a))
            out.push_back(Term{add_finite(t.exp, exp), t.coeff * coeff});
        return Value::from_terms(std::move(out));
    }
    return make_stream(std::make_unique<ScaleGen>(a, 0, true, exp, coeff));
}

Value nf_mul(const Value& a, const Value& b) {
    if (a.is_zero() || b.is_zero()) return Value::zero();
    if (a.known_finite() && b.known_finite()) {
        std::map<Value, Coeff, ExpGreater> acc;
        for (const Term& ta : finite_terms(a))
            for (const Term& tb : finite_terms(b))
                acc[add_finite(ta.exp, tb.exp)] += ta.coeff * tb.coeff;
        std::vector<Term> out;
        for (auto& [e, c] : acc)
            if (c != 0) out.push_back(Term{e, c});
        return Value::from_terms(std::move(out));
    }
    // A single-term factor is just a monomial shift of the other side.
    auto monomial_side = [](const Value& v) -> const Term* {
        if (!v.known_finite()) return nullptr;
        Value::Fetch f0 = v.fetch(0);
        if (f0.status != TermStatus::Got) return nullptr;
        return v.fetch(1).status == TermStatus::End ? f0.term : nullptr;
    };
    if (const Term* m = monomial_side(a)) return nf_scale_monomial(b, m->exp, m->coeff);
    if (const Term* m = monomial_side(b)) return nf_scale_monomial(a, m->exp, m->coeff);
    return make_stream(std::make_unique<CauchyMulGen>(a, b));
}

namespace {

Term require_lead(const Value& x, const char* who) {
    Value::Fetch f = x.fetch(0);
    if (f.status == TermStatus::End)
        throw DomainError(std::string(who) + ": argument is zero");
    if (f.status == TermStatus::Unknown)
        throw WorkLimitError(std::string(who) + ": cannot resolve the leading term");
    return *f.term;
}

}  // namespace

Value nf_invert(const Value& x, int budget) {
    (void)budget;  // laziness defers the cost to consumption
    Term lead = require_lead(x, "invert");
    if (x.known_finite() && x.fetch(1).status == TermStatus::End)
        return Value::monomial(nf_neg(lead.exp), Coeff(1) / lead.coeff);
    return make_stream(std::make_unique<LongDivGen>(Value::one(), x, lead));
}

Value nf_div(const Value& x, const Value& y, int budget) {
    (void)budget;
    Term lead = require_lead(y, "divide");
    if (x.is_zero()) return Value::zero();
    if (y.known_finite() && y.fetch(1).status == TermStatus::End)
        return nf_scale_monomial(x, nf_neg(lead.exp), Coeff(1) / lead.coeff);
    return make_stream(std::make_unique<LongDivGen>(x, y, lead));
}

Value omega_map(const Value& a) {
    if (!a.known_finite())
        throw DomainError("omega_map: exponent must be hereditarily finite");
    return Value::monomial(a, Coeff(1));
}

Value embed_ordinal(const OrdinalCNF& o) {
    if (o.is_eps0()) return Value::eps0();
    std::vector<Term> out;
    for (const OrdTerm& t : o.terms())
        out.push_back(Term{embed_ordinal(t.exp), Coeff(t.coeff)});
    return Value::from_terms(std::move(out));
}

Decomposition additive_decompose(const Value& x) {
    if (x.known_finite()) {
        std::vector<Term> inf, small;
        Coeff c(0);
        for (const Term& t : finite_terms(x)) {
            Ordering s = compare_exact(t.exp, Value::zero());
            if (s == Ordering::Greater)
                inf.push_back(t);
            else if (s == Ordering::Equal)
                c = t.coeff;
            else
                small.push_back(t);
        }
        return {Value::from_terms(std::move(inf)), std::move(c),
                Value::from_terms(std::move(small))};
    }
    // Locate the constant by scanning past the positive exponents.
    Coeff c(0);
    for (std::size_t i = 0;; ++i) {
        if (i >= static_cast<std::size_t>(detail::kPullCap))
            throw WorkLimitError("decompose: infinite part too long to scan");
        Value::Fetch f = x.fetch(i);
        if (f.status == TermStatus::Unknown)
            throw WorkLimitError("decompose: cannot locate the constant term");
        if (f.status == TermStatus::End) break;
        Ordering s = compare_exact(f.term->exp, Value::zero());
        if (s == Ordering::Greater) continue;
        if (s == Ordering::Equal) c = f.term->coeff;
        break;
    }
    return {make_stream(std::make_unique<InfinitePartGen>(x)), std::move(c),
            make_stream(std::make_unique<InfinitesimalPartGen>(x))};
}

MultDecomposition multiplicative_decompose(const Value& x) {
    Term lead = require_lead(x, "multiplicative_decompose");
    // eps = tail / lead, term by term.
    Value eps = make_stream(std::make_unique<ScaleGen>(
        x, 1, true, nf_neg(lead.exp), Coeff(1) / lead.coeff));
    if (x.known_finite()) {
        std::vector<Term> tail(finite_terms(x));
        tail.erase(tail.begin());
        Value eager = nf_scale_monomial(Value::from_terms(std::move(tail)),
                                        nf_neg(lead.exp), Coeff(1) / lead.coeff);
        return {lead.exp, lead.coeff, std::move(eager)};
    }
    return {lead.exp, lead.coeff, std::move(eps)};
}

AsymptoticRelation archimedean_relate(const Value& x, const Value& y) {
    Term lx = require_lead(x, "archimedean_relate");
    Term ly = require_lead(y, "archimedean_relate");
    Ordering c = compare_exact(lx.exp, ly.exp);
    if (c == Ordering::Less) return AsymptoticRelation::Prec;
    if (c == Ordering::Greater) return AsymptoticRelation::Succ;
    return lx.coeff == ly.coeff ? AsymptoticRelation::Sim
                                : AsymptoticRelation::AsympEq;
}

Value sum_of_stream(std::function<std::optional<Term>()> next, bool known_finite) {
    return make_stream(std::make_unique<CallbackGen>(std::move(next)), known_finite);
}

Value ladder_sum(std::function<std::optional<Value>(std::size_t)> summand) {
    return make_stream(std::make_unique<LadderSumGen>(std::move(summand)));
}

Value compose_series(std::function<Coeff(std::size_t)> coeff, const Value& eps) {
    Value::Fetch f0 = eps.fetch(0);
    if (f0.status == TermStatus::End) return Value::from_rational(coeff(0));
    if (f0.status == TermStatus::Unknown)
        throw WorkLimitError("compose_series: cannot resolve the argument");
    if (compare_exact(f0.term->exp, Value::zero()) != Ordering::Less)
        throw DomainError("compose_series: argument must be infinitesimal");
    // Shared power cache: powers[k] = eps^k, built on demand.
    auto powers = std::make_shared<std::vector<Value>>();
    powers->push_back(Value::one());
    Value e = eps;
    auto provider = [coeff = std::move(coeff), powers,
                     e](std::size_t k) -> std::optional<Value> {
        Coeff c = coeff(k);
        while (powers->size() <= k) powers->push_back(nf_mul(powers->back(), e));
        if (c == 0) return Value::zero();
        return nf_scale((*powers)[k], c);
    };
    return ladder_sum(std::move(provider));
}

namespace {

std::optional<BigInt> int_nth_root(const BigInt& v, int n) {
    if (v < 0) return std::nullopt;
    if (v == 0 || v == 1) return v;
    BigInt lo(1), hi(2);
    while (boost::multiprecision::pow(hi, static_cast<unsigned>(n)) < v) hi <<= 1;
    while (lo < hi) {
        BigInt mid = (lo + hi + 1) >> 1;
        if (boost::multiprecision::pow(mid, static_cast<unsigned>(n)) <= v)
            lo = mid;
        else
            hi = mid - 1;
    }
    if (boost::multiprecision::pow(lo, static_cast<unsigned>(n)) == v) return lo;
    return std::nullopt;
}

}  // namespace

std::optional<Rational> rational_nth_root(const Rational& r, int n) {
    if (n <= 0) return std::nullopt;
    bool negative = r < 0;
    if (negative && n % 2 == 0) return std::nullopt;
    Rational a = negative ? Rational(-r) : r;
    auto rn = int_nth_root(numerator(a), n);
    auto rd = int_nth_root(denominator(a), n);
    if (!rn || !rd) return std::nullopt;
    Rational out(*rn, *rd);
    return negative ? Rational(-out) : out;
}

Value nth_root(const Value& x, int n) {
    if (n <= 0) throw DomainError("nth_root: order must be positive");
    if (n == 1) return x;
    MultDecomposition d = multiplicative_decompose(x);
    if (d.leading_coeff < 0 && n % 2 == 0)
        throw DomainError("nth_root: even root of a negative value");
    std::optional<Rational> rc = rational_nth_root(d.leading_coeff, n);
    if (!rc)
        throw DomainError("nth_root: leading coefficient " + d.leading_coeff.str() +
                          " has no exact rational root");
    Value root_exp = nf_scale(d.leading_exponent, Coeff(1, n));
    // (1 + eps)^(1/n) by the binomial series.
    Rational alpha(1, n);
    auto binom = [alpha](std::size_t k) {
        Coeff c(1);
        for (std::size_t i = 0; i < k; ++i)
            c *= (alpha - Coeff(static_cast<long>(i))) / Coeff(static_cast<long>(i) + 1);
        return c;
    };
    Value unit = compose_series(binom, d.unit_tail);
    return nf_scale_monomial(unit, root_exp, *rc);
}

}  // namespace surreal
