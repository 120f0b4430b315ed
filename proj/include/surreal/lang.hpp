#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "surreal/value.hpp"

namespace surreal::lang {

// Expression tree for the calculator language.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := power
//   power  := unary ('^' power)?          right associative
//   unary  := '-' unary | primary
//   primary:= integer | 'w' | 'eps0' | ident '(' args ')'
//           | '(' expr ')' | '{' list '|' list '}'
//
// spelled as Pratt binding powers: ^ 30, unary - 25, * / 20, + - 10.
enum class ExprKind { Number, Symbol, Unary, Binary, Call, Cut };

struct Expr {
    ExprKind kind;
    std::size_t offset = 0;     // byte position in the source text
    BigInt number;              // Number
    std::string name;           // Symbol, Call
    char op = 0;                // Unary, Binary
    std::vector<Expr> args;     // operands, call arguments, cut members
    std::size_t cut_split = 0;  // Cut: args[0..cut_split) left, rest right
};

// Throws ParseError carrying the byte offset of the offending token.
Expr parse(const std::string& text);

// Reduces an expression tree to a normal form.  '^' is restricted: the base
// must be w (any exponent) or the exponent must be a rational constant, in
// which case integer powers multiply out and p/q powers go through nth_root.
// Cut literal members must come out dyadic.  Everything else dispatches to
// the engine and propagates its errors.
Value evaluate(const Expr& e);

Value evaluate_text(const std::string& text);

enum class Format { Nf, Sign, Json };

// "w^2*3 + 5 + w^-1*7"; unit coefficients drop the "*1", negative terms
// join with " - ", integer exponents print bare, anything else in
// parentheses.  A stream cut off at `depth` terms appends
// " ... (truncated at depth N)".  Exponents always print in full; they are
// hereditarily finite by construction.
std::string render_nf(const Value& v, std::size_t depth);

// Sign-sequence form over '+' / '-'; zero is the empty string.  Only dyadic
// constants have one, anything else is a DomainError.
std::string render_sign(const Value& v);

// {"terms":[{"exp":<json>,"coef":"p/q"}],"truncated":false} with the eps0
// atom as {"atom":"eps0"}.  Compact: no whitespace.
std::string render_json(const Value& v, std::size_t depth);

std::string render(const Value& v, Format f, std::size_t depth);

}  // namespace surreal::lang
