#include <unistd.h>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "surreal/cut.hpp"
#include "surreal/derivation.hpp"
#include "surreal/dyadic.hpp"
#include "surreal/explog.hpp"
#include "surreal/lang.hpp"
#include "surreal/testkit.hpp"
#include "surreal/value.hpp"

using namespace surreal;

namespace {

constexpr std::size_t kDefaultDepth = 20;

int usage(std::ostream& os) {
    os << "usage: surcalc repl\n"
          "       surcalc eval \"<expr>\" [--depth N] [--format nf|sign|json]\n"
          "       surcalc eval [--depth N] [--format nf|sign|json]   (expressions on stdin, one per line)\n"
          "       surcalc selftest [--seed S]\n"
          "\n"
          "expression language:\n"
          "  literals     integers; rationals via division (3/2)\n"
          "  symbols      w (omega), eps0\n"
          "  operators    + - * / ^   (^ needs base w or a rational exponent)\n"
          "  functions    exp(x), log(x), d(x), root(n, x)\n"
          "  cuts         {a, b | c, d}   simplest value between the sides\n";
    return 2;
}

struct Options {
    std::size_t depth = kDefaultDepth;
    lang::Format format = lang::Format::Nf;
    std::uint64_t seed = 1;
    std::size_t samples = 200;
    std::optional<std::string> expr;
    bool bad = false;
};

Options parse_options(int argc, char** argv, int start) {
    Options o;
    for (int i = start; i < argc; ++i) {
        std::string a = argv[i];
        auto need_value = [&](const char* flag) -> const char* {
            if (i + 1 >= argc) {
                std::cerr << "surcalc: " << flag << " needs a value\n";
                o.bad = true;
                return nullptr;
            }
            return argv[++i];
        };
        if (a == "--depth") {
            if (const char* v = need_value("--depth")) {
                try {
                    long n = std::stol(v);
                    if (n < 1 || n > 1000000) throw std::out_of_range("depth");
                    o.depth = static_cast<std::size_t>(n);
                } catch (...) {
                    std::cerr << "surcalc: bad --depth value '" << v << "'\n";
                    o.bad = true;
                }
            }
        } else if (a == "--format") {
            if (const char* v = need_value("--format")) {
                std::string f = v;
                if (f == "nf")
                    o.format = lang::Format::Nf;
                else if (f == "sign")
                    o.format = lang::Format::Sign;
                else if (f == "json")
                    o.format = lang::Format::Json;
                else {
                    std::cerr << "surcalc: bad --format value '" << f << "'\n";
                    o.bad = true;
                }
            }
        } else if (a == "--seed") {
            if (const char* v = need_value("--seed")) {
                try {
                    o.seed = std::stoull(v);
                } catch (...) {
                    std::cerr << "surcalc: bad --seed value '" << v << "'\n";
                    o.bad = true;
                }
            }
        } else if (a == "--samples") {
            if (const char* v = need_value("--samples")) {
                try {
                    o.samples = std::stoul(v);
                } catch (...) {
                    std::cerr << "surcalc: bad --samples value '" << v << "'\n";
                    o.bad = true;
                }
            }
        } else if (!a.empty() && a[0] == '-') {
            std::cerr << "surcalc: unknown option '" << a << "'\n";
            o.bad = true;
        } else if (!o.expr) {
            o.expr = a;
        } else {
            std::cerr << "surcalc: more than one expression argument\n";
            o.bad = true;
        }
    }
    return o;
}

bool blank(const std::string& s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

int run_eval(const Options& o) {
    if (o.expr) {
        try {
            Value v = lang::evaluate_text(*o.expr);
            std::cout << lang::render(v, o.format, o.depth) << "\n";
            return 0;
        } catch (const ParseError& e) {
            std::cerr << "parse error at byte " << e.offset() << ": " << e.what() << "\n";
            return 2;
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    // batch: one expression per line, one rendering per line, blanks skipped
    int rc = 0;
    std::string line;
    while (std::getline(std::cin, line)) {
        if (blank(line)) continue;
        try {
            Value v = lang::evaluate_text(line);
            std::cout << lang::render(v, o.format, o.depth) << "\n";
        } catch (const ParseError& e) {
            std::cout << "parse error at byte " << e.offset() << ": " << e.what() << "\n";
            rc = 2;
        } catch (const Error& e) {
            std::cout << "error: " << e.what() << "\n";
            if (rc == 0) rc = 1;
        }
    }
    return rc;
}

void repl_axioms(std::size_t count) {
    testkit::SamplerConfig cfg;
    cfg.seed = 1;
    testkit::FragmentSampler sampler(cfg);
    std::vector<Value> samples;
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) samples.push_back(sampler.sample());
    AxiomReport r = check_derivation_axioms(samples, 6);
    std::cout << "checked " << r.pairs << " pairs: leibniz " << r.leibniz_failures
              << ", additivity " << r.additivity_failures << ", positivity "
              << r.positivity_failures << ", small " << r.small_failures
              << (r.ok() ? " (ok)" : " (FAIL)") << "\n";
}

int run_repl() {
    bool tty = isatty(0);
    std::size_t depth = kDefaultDepth;
    lang::Format format = lang::Format::Nf;
    std::string line;
    for (;;) {
        if (tty) std::cout << "surcalc> " << std::flush;
        if (!std::getline(std::cin, line)) break;
        if (blank(line)) continue;
        std::istringstream words(line);
        std::string head;
        words >> head;
        if (head[0] == ':') {
            if (head == ":quit" || head == ":q") break;
            if (head == ":nf")
                format = lang::Format::Nf;
            else if (head == ":sign")
                format = lang::Format::Sign;
            else if (head == ":json")
                format = lang::Format::Json;
            else if (head == ":depth") {
                long n;
                if (words >> n) {
                    if (n >= 1 && n <= 1000000)
                        depth = static_cast<std::size_t>(n);
                    else
                        std::cout << "error: depth out of range\n";
                } else {
                    std::cout << "depth " << depth << "\n";
                }
            } else if (head == ":axioms") {
                std::size_t n = 20;
                words >> n;
                repl_axioms(n);
            } else {
                std::cout << "error: unknown command " << head << "\n";
            }
            continue;
        }
        try {
            Value v = lang::evaluate_text(line);
            std::cout << lang::render(v, format, depth) << "\n";
        } catch (const ParseError& e) {
            std::cout << "parse error at byte " << e.offset() << ": " << e.what() << "\n";
        } catch (const Error& e) {
            std::cout << "error: " << e.what() << "\n";
        }
    }
    return 0;
}

// ---- selftest ----

int failures = 0;

void report(const std::string& label, bool ok, const std::string& detail = "") {
    if (ok) {
        std::cout << "[ok] " << label << "\n";
    } else {
        ++failures;
        std::cout << "[fail] " << label << (detail.empty() ? "" : ": " + detail) << "\n";
    }
}

template <typename F>
void check(const std::string& label, F f) {
    try {
        f();
    } catch (const std::exception& e) {
        report(label, false, e.what());
    }
}

bool prefix_same(const Value& a, const Value& b, int k) {
    return prefix_equal(a, b, k).ok;
}

void selftest_codec() {
    check("sign-sequence codec, birthday <= 6", [] {
        for (const Dyadic& d : testkit::enumerate_dyadics(6)) {
            SignSeq s = SignSeq::encode(d);
            if (s.decode() != d || s.length() != birthday(d)) {
                report("sign-sequence codec, birthday <= 6", false, d.to_string());
                return;
            }
        }
        report("sign-sequence codec, birthday <= 6", true);
    });
}

void selftest_genetic() {
    check("genetic arithmetic vs rationals, birthday <= 3", [] {
        auto pool = testkit::enumerate_dyadics(3);
        for (const Dyadic& a : pool)
            for (const Dyadic& b : pool) {
                if (genetic_add(a, b).to_rational() != a.to_rational() + b.to_rational() ||
                    genetic_mul(a, b).to_rational() != a.to_rational() * b.to_rational()) {
                    report("genetic arithmetic vs rationals, birthday <= 3", false,
                           a.to_string() + ", " + b.to_string());
                    return;
                }
            }
        report("genetic arithmetic vs rationals, birthday <= 3", true);
    });
}

void selftest_cuts(std::uint64_t seed) {
    check("simplest_between vs tree search, 100 cuts", [seed] {
        testkit::SamplerConfig cfg;
        cfg.seed = seed;
        testkit::FragmentSampler sampler(cfg);
        for (int i = 0; i < 100; ++i) {
            Dyadic a = sampler.sample_dyadic(6);
            Dyadic b = sampler.sample_dyadic(6);
            if (b < a) std::swap(a, b);
            if (a == b) continue;
            CutExpr cut({a}, {b});
            Dyadic fast = simplest_between(cut);
            Dyadic slow = testkit::tree_search_simplest({a}, {b}, 32);
            if (fast != slow) {
                report("simplest_between vs tree search, 100 cuts", false,
                       "{" + a.to_string() + "|" + b.to_string() + "}");
                return;
            }
        }
        report("simplest_between vs tree search, 100 cuts", true);
    });
}

void selftest_series() {
    check("series identities", [] {
        Value one_v = Value::omega() * nf_invert(Value::one() - Value::monomial(Value::from_int(-1), 1));
        (void)one_v;
        Value p = Value::omega() * nf_div(Value::one(), Value::omega());
        if (!prefix_same(p, Value::one(), 3)) {
            report("series identities", false, "w * (1/w)");
            return;
        }
        Value geo = nf_invert(Value::one() - Value::monomial(Value::from_int(-1), 1));
        auto t = geo.take(10);
        for (int i = 0; i < 10; ++i) {
            if (t.terms[static_cast<std::size_t>(i)].coeff != 1 ||
                !equal_exact(t.terms[static_cast<std::size_t>(i)].exp, Value::from_int(-i))) {
                report("series identities", false, "geometric term " + std::to_string(i));
                return;
            }
        }
        Value r = nth_root(Value::omega(), 2);
        if (!prefix_same(r * r, Value::omega(), 3)) {
            report("series identities", false, "sqrt(w)^2");
            return;
        }
        report("series identities", true);
    });
}

void selftest_explog(std::uint64_t seed) {
    check("exp/log round trip, 5 samples", [seed] {
        if (lang::render_nf(exp_nf(Value::omega()), 5) != "w^w") {
            report("exp/log round trip, 5 samples", false, "exp(w)");
            return;
        }
        testkit::SamplerConfig cfg;
        cfg.seed = seed;
        testkit::FragmentSampler sampler(cfg);
        for (int i = 0; i < 5; ++i) {
            Value x = sampler.sample_exp_ready();
            if (!prefix_same(log_nf(exp_nf(x)), x, 8)) {
                report("exp/log round trip, 5 samples", false, lang::render_nf(x, 8));
                return;
            }
        }
        report("exp/log round trip, 5 samples", true);
    });
}

void selftest_derivation(std::uint64_t seed) {
    check("derivation and integration", [seed] {
        if (!prefix_same(derive(Value::omega()).value, Value::one(), 2)) {
            report("derivation and integration", false, "d(w)");
            return;
        }
        Value logw = log_nf(Value::omega());
        Value expect = nf_invert(Value::omega());
        if (!prefix_same(derive(logw).value, expect, 3)) {
            report("derivation and integration", false, "d(log w)");
            return;
        }
        struct Case {
            Value in, out;
        } cases[] = {
            {Value::one(), Value::omega()},
            {nf_invert(Value::omega()), logw},
            {Value::omega(), nf_scale(Value::monomial(Value::from_int(2), 1), Rational(1, 2))},
        };
        for (const Case& c : cases) {
            IntegrateResult r = asymptotic_integrate(c.in);
            if (!r.exact || !prefix_same(r.value, c.out, 4)) {
                report("derivation and integration", false, "integral");
                return;
            }
        }
        testkit::SamplerConfig cfg;
        cfg.seed = seed;
        testkit::FragmentSampler sampler(cfg);
        std::vector<Value> samples;
        for (int i = 0; i < 10; ++i) samples.push_back(sampler.sample());
        if (!check_derivation_axioms(samples, 6).ok()) {
            report("derivation and integration", false, "axioms");
            return;
        }
        report("derivation and integration", true);
    });
}

int run_selftest(const Options& o) {
    selftest_codec();
    selftest_genetic();
    selftest_cuts(o.seed);
    selftest_series();
    selftest_explog(o.seed);
    selftest_derivation(o.seed);
    if (failures) {
        std::cout << failures << " check(s) failed\n";
        return 1;
    }
    std::cout << "all checks passed\n";
    return 0;
}

// ---- minimize (hidden): hunt for an axiom counterexample and shrink it ----

Value drop_last_term(const Value& v) {
    auto t = v.take(static_cast<std::size_t>(-1));
    t.terms.pop_back();
    return Value::from_terms(std::move(t.terms));
}

int run_minimize(const Options& o) {
    testkit::SamplerConfig cfg;
    cfg.seed = o.seed;
    testkit::FragmentSampler sampler(cfg);
    int depth = 10;
    auto leibniz_holds = [&](const Value& x, const Value& y) {
        Value lhs = derive(x * y).value;
        Value rhs = derive(x).value * y + x * derive(y).value;
        return prefix_equal(lhs, rhs, depth).ok;
    };
    auto additivity_holds = [&](const Value& x, const Value& y) {
        return prefix_equal(derive(x + y).value, derive(x).value + derive(y).value, depth).ok;
    };
    for (std::size_t i = 0; i < o.samples; ++i) {
        Value x = sampler.sample();
        Value y = sampler.sample();
        const char* law = nullptr;
        if (!additivity_holds(x, y))
            law = "additivity";
        else if (!leibniz_holds(x, y))
            law = "leibniz";
        if (!law) continue;
        auto still_fails = [&](const Value& a, const Value& b) {
            return std::string(law) == "additivity" ? !additivity_holds(a, b)
                                                    : !leibniz_holds(a, b);
        };
        for (;;) {
            if (!x.is_zero() && x.take(static_cast<std::size_t>(-1)).terms.size() > 1 &&
                still_fails(drop_last_term(x), y)) {
                x = drop_last_term(x);
                continue;
            }
            if (!y.is_zero() && y.take(static_cast<std::size_t>(-1)).terms.size() > 1 &&
                still_fails(x, drop_last_term(y))) {
                y = drop_last_term(y);
                continue;
            }
            break;
        }
        std::cout << "counterexample (seed " << o.seed << ", sample " << i << ", law "
                  << law << "):\n"
                  << "  x = " << lang::render_nf(x, 50) << "\n"
                  << "  y = " << lang::render_nf(y, 50) << "\n";
        return 3;
    }
    std::cout << "no counterexample found in " << o.samples << " samples (seed " << o.seed
              << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) return usage(std::cerr);
    std::string cmd = argv[1];
    if (cmd == "--help" || cmd == "-h" || cmd == "help") {
        usage(std::cout);
        return 0;
    }
    Options o = parse_options(argc, argv, 2);
    if (o.bad) return 2;
    if (cmd == "repl") return run_repl();
    if (cmd == "eval") return run_eval(o);
    if (cmd == "selftest") return run_selftest(o);
    if (cmd == "minimize") return run_minimize(o);
    std::cerr << "surcalc: unknown command '" << cmd << "'\n";
    return usage(std::cerr);
}
