#pragma once

#include <memory>
#include <string>

#include "epscalc/errors.hpp"

namespace epscalc {

enum class ExprKind { Constant, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class CallName { Sin, Cos, Sinh, Cosh, Exp, Ln, Sqrt, Abs };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

// Immutable tree. Pow keeps its exponent as an exact reduced rational with a
// positive denominator; Call names come from the closed list above.
struct ExprNode {
    ExprKind kind = ExprKind::Constant;
    double constant = 0.0;          // Constant
    long long pow_num = 0;          // Pow
    long long pow_den = 1;          // Pow, always > 0
    CallName call = CallName::Sin;  // Call
    Expr a, b;                      // a: unary child / left; b: right
    std::size_t src_offset = 0;     // byte offset in the source text, 0 if built by hand
};

// Grammar (whitespace insignificant, no implicit multiplication, one variable):
//   expr   := term (("+" | "-") term)*
//   term   := factor (("*" | "/") factor)*
//   factor := "-" factor | power
//   power  := atom ("^" exponent)?
//   atom   := NUMBER | "x" | NAME "(" expr ")" | "(" expr ")"
// The exponent after "^" must fold to an exact rational: an optionally signed
// integer or decimal literal, an optional "/" integer-literal denominator, or
// such a thing in parentheses. Anything else there is rejected.
Expr parse(const std::string& src); // throws ParseError carrying a byte offset

// Fully parenthesized text form; parse(to_text(e)) rebuilds the same tree.
std::string to_text(const Expr& e);

bool expr_equal(const Expr& a, const Expr& b);

// construction helpers (tests, internal rewrites)
Expr ex_const(double v);
Expr ex_var();
Expr ex_neg(Expr a);
Expr ex_add(Expr a, Expr b);
Expr ex_sub(Expr a, Expr b);
Expr ex_mul(Expr a, Expr b);
Expr ex_div(Expr a, Expr b);
Expr ex_pow(Expr base, long long num, long long den = 1);
Expr ex_call(CallName f, Expr a);

const char* call_name(CallName f);

} // namespace epscalc
