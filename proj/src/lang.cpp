#include "surreal/lang.hpp"

#include <cctype>
#include <cstring>
#include <optional>
#include <utility>

#include "surreal/cut.hpp"
#include "surreal/derivation.hpp"
#include "surreal/dyadic.hpp"
#include "surreal/explog.hpp"

namespace surreal::lang {

namespace {

enum class Tok { Int, Ident, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Tok::Int, s.substr(start, i - start), start});
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            out.push_back({Tok::Ident, s.substr(start, i - start), start});
        } else if (std::strchr("+-*/^(){}|,", c)) {
            out.push_back({Tok::Punct, std::string(1, c), start});
            ++i;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

int infix_power(const Token& t) {
    if (t.kind != Tok::Punct || t.text.size() != 1) return -1;
    switch (t.text[0]) {
        case '+':
        case '-': return 10;
        case '*':
        case '/': return 20;
        case '^': return 30;
        default: return -1;
    }
}

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Expr parse_all() {
        Expr e = parse_expr(0);
        if (peek().kind != Tok::End)
            throw ParseError("unexpected trailing input", peek().offset);
        return e;
    }

  private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }

    bool at_punct(char c) const {
        return peek().kind == Tok::Punct && peek().text[0] == c;
    }

    void expect_punct(char c, const char* what) {
        if (!at_punct(c)) throw ParseError(what, peek().offset);
        ++pos_;
    }

    Expr parse_expr(int min_bp) {
        Expr lhs = parse_prefix();
        for (;;) {
            int bp = infix_power(peek());
            if (bp < min_bp) break;
            Token op = next();
            // ^ is right associative, the rest bind left
            int rhs_bp = op.text[0] == '^' ? bp : bp + 1;
            Expr rhs = parse_expr(rhs_bp);
            Expr node;
            node.kind = ExprKind::Binary;
            node.offset = op.offset;
            node.op = op.text[0];
            node.args.push_back(std::move(lhs));
            node.args.push_back(std::move(rhs));
            lhs = std::move(node);
        }
        return lhs;
    }

    Expr parse_prefix() {
        Token t = next();
        Expr e;
        e.offset = t.offset;
        switch (t.kind) {
            case Tok::Int:
                e.kind = ExprKind::Number;
                e.number = BigInt(t.text);
                return e;
            case Tok::Ident:
                if (t.text == "w" || t.text == "eps0") {
                    e.kind = ExprKind::Symbol;
                    e.name = t.text;
                    return e;
                }
                return parse_call(std::move(t));
            case Tok::Punct:
                break;
            case Tok::End:
                throw ParseError("expected expression", t.offset);
        }
        switch (t.text[0]) {
            case '-':
                e.kind = ExprKind::Unary;
                e.op = '-';
                e.args.push_back(parse_expr(25));
                return e;
            case '(': {
                Expr inner = parse_expr(0);
                expect_punct(')', "expected ')'");
                return inner;
            }
            case '{':
                return parse_cut(t.offset);
            default:
                throw ParseError("expected expression", t.offset);
        }
    }

    Expr parse_call(Token name) {
        std::size_t arity;
        if (name.text == "exp" || name.text == "log" || name.text == "d")
            arity = 1;
        else if (name.text == "root")
            arity = 2;
        else
            throw ParseError("unknown name '" + name.text + "'", name.offset);
        Expr e;
        e.kind = ExprKind::Call;
        e.offset = name.offset;
        e.name = name.text;
        expect_punct('(', "expected '(' after function name");
        e.args.push_back(parse_expr(0));
        while (at_punct(',')) {
            ++pos_;
            e.args.push_back(parse_expr(0));
        }
        if (e.args.size() != arity)
            throw ParseError(name.text + " expects " + std::to_string(arity) +
                                 (arity == 1 ? " argument" : " arguments"),
                             name.offset);
        expect_punct(')', "expected ')'");
        return e;
    }

    Expr parse_cut(std::size_t offset) {
        Expr e;
        e.kind = ExprKind::Cut;
        e.offset = offset;
        if (!at_punct('|')) {
            e.args.push_back(parse_expr(0));
            while (at_punct(',')) {
                ++pos_;
                e.args.push_back(parse_expr(0));
            }
        }
        e.cut_split = e.args.size();
        expect_punct('|', "expected '|' in cut literal");
        if (!at_punct('}')) {
            e.args.push_back(parse_expr(0));
            while (at_punct(',')) {
                ++pos_;
                e.args.push_back(parse_expr(0));
            }
        }
        expect_punct('}', "expected '}' in cut literal");
        return e;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// The value as a plain rational, when it provably is one.  Forces at most
// two terms of a stream.
std::optional<Rational> constant_of(const Value& v) {
    if (v.is_eps0_atom()) return std::nullopt;
    auto t = v.take(1);
    if (t.unknown || !t.complete) return std::nullopt;
    if (t.terms.empty()) return Rational(0);
    if (t.terms[0].exp.is_zero()) return t.terms[0].coeff;
    return std::nullopt;
}

Value int_pow(const Value& base, BigInt n) {
    if (n == 0) return Value::one();
    bool invert = n < 0;
    if (invert) n = -n;
    if (n > 64) throw DomainError("integer power larger than 64");
    Value acc = base;
    for (BigInt i = 1; i < n; ++i) acc = acc * base;
    return invert ? nf_invert(acc) : acc;
}

Value eval_pow(const Expr& e) {
    Value base = evaluate(e.args[0]);
    Value expo = evaluate(e.args[1]);
    // w^a is the monomial with exponent a, for any a in the fragment
    if (base.known_finite() && !base.is_eps0_atom() &&
        equal_exact(base, Value::omega()))
        return Value::monomial(expo, 1);
    if (auto q = constant_of(expo)) {
        BigInt den = boost::multiprecision::denominator(*q);
        Value b = base;
        if (den != 1) {
            if (den > 64) throw DomainError("root degree larger than 64");
            b = nth_root(b, den.convert_to<int>());
        }
        return int_pow(b, boost::multiprecision::numerator(*q));
    }
    throw DomainError("unsupported power: base must be w or the exponent a rational constant");
}

Dyadic cut_member(const Expr& m) {
    Value v = evaluate(m);
    auto c = constant_of(v);
    if (c) {
        if (auto d = Dyadic::from_rational(*c)) return *d;
    }
    throw DomainError("cut members must be dyadic constants");
}

// Exponents are hereditarily finite, so an unbounded take always ends.
constexpr std::size_t kWholeValue = static_cast<std::size_t>(-1);

std::string rational_text(const Rational& q) { return q.str(); }

std::string exponent_text(const Value& e) {
    if (e.is_eps0_atom()) return "w^eps0";
    if (auto q = constant_of(e)) {
        if (*q == 1) return "w";
        if (boost::multiprecision::denominator(*q) == 1)
            return "w^" + rational_text(*q);
        return "w^(" + rational_text(*q) + ")";
    }
    // A bare omega power needs no parentheses: ^ associates right, so
    // "w^w^2" reads back as w^(w^2).
    auto t = e.take(1);
    if (t.complete && t.terms.size() == 1 && t.terms[0].coeff == 1)
        return "w^" + exponent_text(t.terms[0].exp);
    return "w^(" + render_nf(e, kWholeValue) + ")";
}

std::string term_text(const Value& exp, const Rational& magnitude) {
    if (exp.is_zero()) return rational_text(magnitude);
    std::string head = exponent_text(exp);
    if (magnitude == 1) return head;
    return head + "*" + rational_text(magnitude);
}

void json_value(std::string& out, const Value& v, std::size_t depth) {
    if (v.is_eps0_atom()) {
        out += "{\"atom\":\"eps0\"}";
        return;
    }
    auto t = v.take(depth);
    out += "{\"terms\":[";
    for (std::size_t i = 0; i < t.terms.size(); ++i) {
        if (i) out += ",";
        out += "{\"exp\":";
        json_value(out, t.terms[i].exp, kWholeValue);
        out += ",\"coef\":\"";
        out += t.terms[i].coeff.str();
        out += "\"}";
    }
    out += "],\"truncated\":";
    out += t.complete ? "false" : "true";
    out += "}";
}

}  // namespace

Expr parse(const std::string& text) { return Parser(lex(text)).parse_all(); }

Value evaluate(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Number:
            return Value::from_rational(Rational(e.number));
        case ExprKind::Symbol:
            return e.name == "w" ? Value::omega() : Value::eps0();
        case ExprKind::Unary:
            return -evaluate(e.args[0]);
        case ExprKind::Binary: {
            if (e.op == '^') return eval_pow(e);
            Value a = evaluate(e.args[0]);
            Value b = evaluate(e.args[1]);
            switch (e.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/':
                    // dividing by a plain constant stays exact and eager
                    if (auto c = constant_of(b)) {
                        if (*c == 0) throw DomainError("division by zero");
                        return nf_scale(a, Rational(1) / *c);
                    }
                    return nf_div(a, b);
                default: break;
            }
            throw DomainError("bad operator");
        }
        case ExprKind::Call: {
            if (e.name == "root") {
                auto n = constant_of(evaluate(e.args[0]));
                if (!n || boost::multiprecision::denominator(*n) != 1 || *n < 1 ||
                    *n > 64)
                    throw DomainError("root degree must be an integer in [1, 64]");
                return nth_root(evaluate(e.args[1]),
                                boost::multiprecision::numerator(*n).convert_to<int>());
            }
            Value a = evaluate(e.args[0]);
            if (e.name == "exp") return exp_nf(a);
            if (e.name == "log") return log_nf(a);
            return derive(a).value;
        }
        case ExprKind::Cut: {
            std::vector<Dyadic> left, right;
            for (std::size_t i = 0; i < e.args.size(); ++i)
                (i < e.cut_split ? left : right).push_back(cut_member(e.args[i]));
            CutExpr cut(std::move(left), std::move(right));
            return Value::from_rational(simplest_between(cut).to_rational());
        }
    }
    throw DomainError("bad expression node");
}

Value evaluate_text(const std::string& text) { return evaluate(parse(text)); }

std::string render_nf(const Value& v, std::size_t depth) {
    if (v.is_eps0_atom()) return "eps0";
    auto t = v.take(depth);
    std::string out;
    for (std::size_t i = 0; i < t.terms.size(); ++i) {
        const Term& term = t.terms[i];
        bool neg = term.coeff < 0;
        Rational mag = neg ? Rational(-term.coeff) : term.coeff;
        if (i == 0)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += term_text(term.exp, mag);
    }
    if (!t.complete) {
        if (!out.empty()) out += " ";
        out += "... (truncated at depth " + std::to_string(depth) + ")";
        return out;
    }
    return out.empty() ? "0" : out;
}

std::string render_sign(const Value& v) {
    if (!v.is_eps0_atom()) {
        auto t = v.take(1);
        if (t.complete && !t.unknown) {
            if (t.terms.empty()) return "";  // zero: the empty sign sequence
            if (t.terms[0].exp.is_zero()) {
                if (auto d = Dyadic::from_rational(t.terms[0].coeff))
                    return SignSeq::encode(*d).to_string();
            }
        }
    }
    throw DomainError("sign format requires a dyadic value");
}

std::string render_json(const Value& v, std::size_t depth) {
    std::string out;
    json_value(out, v, depth);
    return out;
}

std::string render(const Value& v, Format f, std::size_t depth) {
    switch (f) {
        case Format::Nf: return render_nf(v, depth);
        case Format::Sign: return render_sign(v);
        case Format::Json: return render_json(v, depth);
    }
    throw DomainError("bad format");
}

}  // namespace surreal::lang
