#include "epscalc/expr.hpp"

#include <cctype>
#include <cstdint>
#include <charconv>
#include <numeric>
#include <utility>

namespace epscalc {

namespace {

enum class Tok { Number, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind = Tok::End;
    std::size_t at = 0;
    double value = 0.0; // Number
    std::string text;   // Name, or the raw digits of a Number
};

struct Lexer {
    const std::string& src;
    std::size_t pos = 0;

    Token next() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos >= src.size()) return {Tok::End, src.size(), 0.0, {}};
        const std::size_t at = pos;
        const char c = src[pos];
        switch (c) {
        case '+': ++pos; return {Tok::Plus, at, 0.0, {}};
        case '-': ++pos; return {Tok::Minus, at, 0.0, {}};
        case '*': ++pos; return {Tok::Star, at, 0.0, {}};
        case '/': ++pos; return {Tok::Slash, at, 0.0, {}};
        case '^': ++pos; return {Tok::Caret, at, 0.0, {}};
        case '(': ++pos; return {Tok::LParen, at, 0.0, {}};
        case ')': ++pos; return {Tok::RParen, at, 0.0, {}};
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            if (pos < src.size() && src[pos] == '.') {
                ++pos;
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                    ++pos;
            }
            std::string raw = src.substr(at, pos - at);
            if (raw == ".") throw ParseError("expected digits in number", at);
            double v = 0.0;
            auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
            if (res.ec != std::errc())
                throw ParseError("number literal out of range", at);
            return {Tok::Number, at, v, raw};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                ++pos;
            return {Tok::Name, at, 0.0, src.substr(at, pos - at)};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", at);
    }
};

bool lookup_call(const std::string& s, CallName& out) {
    if (s == "sin") out = CallName::Sin;
    else if (s == "cos") out = CallName::Cos;
    else if (s == "sinh") out = CallName::Sinh;
    else if (s == "cosh") out = CallName::Cosh;
    else if (s == "exp") out = CallName::Exp;
    else if (s == "ln") out = CallName::Ln;
    else if (s == "sqrt") out = CallName::Sqrt;
    else if (s == "abs") out = CallName::Abs;
    else return false;
    return true;
}

std::shared_ptr<ExprNode> make_node(ExprKind k, std::size_t at) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->src_offset = at;
    return n;
}

// exact rational from the raw text of an integer or decimal literal
std::pair<long long, long long> rational_from_text(const std::string& raw, std::size_t at) {
    long long num = 0, den = 1;
    int digits = 0;
    bool frac = false;
    for (char c : raw) {
        if (c == '.') {
            frac = true;
            continue;
        }
        if (++digits > 18) throw ParseError("exponent literal has too many digits", at);
        num = num * 10 + (c - '0');
        if (frac) den *= 10;
    }
    if (digits == 0) throw ParseError("expected digits in exponent", at);
    long long g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

struct Parser {
    Lexer lex;
    Token cur;

    explicit Parser(const std::string& s) : lex{s, 0} { cur = lex.next(); }

    void advance() { cur = lex.next(); }

    void expect(Tok k, const char* what) {
        if (cur.kind != k) throw ParseError(what, cur.at);
        advance();
    }

    Expr parse_expr() {
        Expr e = parse_term();
        while (cur.kind == Tok::Plus || cur.kind == Tok::Minus) {
            bool add = cur.kind == Tok::Plus;
            std::size_t at = cur.at;
            advance();
            auto n = make_node(add ? ExprKind::Add : ExprKind::Sub, at);
            n->a = e;
            n->b = parse_term();
            e = n;
        }
        return e;
    }

    Expr parse_term() {
        Expr e = parse_factor();
        while (cur.kind == Tok::Star || cur.kind == Tok::Slash) {
            bool mul = cur.kind == Tok::Star;
            std::size_t at = cur.at;
            advance();
            auto n = make_node(mul ? ExprKind::Mul : ExprKind::Div, at);
            n->a = e;
            n->b = parse_factor();
            e = n;
        }
        return e;
    }

    Expr parse_factor() {
        if (cur.kind == Tok::Minus) {
            std::size_t at = cur.at;
            advance();
            auto n = make_node(ExprKind::Neg, at);
            n->a = parse_factor();
            return n;
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (cur.kind == Tok::Caret) {
            std::size_t at = cur.at;
            advance();
            auto [num, den] = parse_exponent();
            auto n = make_node(ExprKind::Pow, at);
            n->a = base;
            n->pow_num = num;
            n->pow_den = den;
            return n;
        }
        return base;
    }

    // the exponent slot only takes exact rationals; "/" here builds the
    // fraction p/q rather than dividing the power (parenthesize for that)
    std::pair<long long, long long> parse_exponent() {
        auto r = parse_exponent_primary();
        while (cur.kind == Tok::Slash) {
            std::size_t at = cur.at;
            advance();
            auto d = parse_exponent_primary();
            if (d.first == 0) throw ParseError("zero denominator in exponent", at);
            __int128 num = static_cast<__int128>(r.first) * d.second;
            __int128 den = static_cast<__int128>(r.second) * d.first;
            if (den < 0) {
                num = -num;
                den = -den;
            }
            if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
                throw ParseError("exponent out of range", at);
            r = {static_cast<long long>(num), static_cast<long long>(den)};
            long long g = std::gcd(r.first < 0 ? -r.first : r.first, r.second);
            if (g > 1) {
                r.first /= g;
                r.second /= g;
            }
        }
        return r;
    }

    std::pair<long long, long long> parse_exponent_primary() {
        bool neg = false;
        while (cur.kind == Tok::Minus) {
            neg = !neg;
            advance();
        }
        std::pair<long long, long long> r;
        if (cur.kind == Tok::LParen) {
            advance();
            r = parse_exponent();
            expect(Tok::RParen, "expected ')' after the exponent");
        } else if (cur.kind == Tok::Number) {
            r = rational_from_text(cur.text, cur.at);
            advance();
        } else {
            throw ParseError(
                "the exponent must be a rational constant: an integer, a decimal, or p/q",
                cur.at);
        }
        if (neg) r.first = -r.first;
        return r;
    }

    Expr parse_atom() {
        switch (cur.kind) {
        case Tok::Number: {
            auto n = make_node(ExprKind::Constant, cur.at);
            n->constant = cur.value;
            advance();
            return n;
        }
        case Tok::Name: {
            if (cur.text == "x") {
                auto n = make_node(ExprKind::Variable, cur.at);
                advance();
                return n;
            }
            CallName f;
            if (!lookup_call(cur.text, f))
                throw ParseError("unknown name '" + cur.text +
                                     "'; the variable is 'x' and the functions are "
                                     "sin, cos, sinh, cosh, exp, ln, sqrt, abs",
                                 cur.at);
            auto n = make_node(ExprKind::Call, cur.at);
            n->call = f;
            advance();
            expect(Tok::LParen, "a function name must be followed by '('");
            n->a = parse_expr();
            expect(Tok::RParen, "unbalanced parenthesis: expected ')'");
            return n;
        }
        case Tok::LParen: {
            advance();
            Expr e = parse_expr();
            expect(Tok::RParen, "unbalanced parenthesis: expected ')'");
            return e;
        }
        default:
            throw ParseError("expected a number, 'x', a function call, '-', or '('", cur.at);
        }
    }
};

std::string shortest_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void emit(const Expr& e, std::string& out);

void emit_wrapped(const Expr& e, std::string& out) {
    out.push_back('(');
    emit(e, out);
    out.push_back(')');
}

void emit(const Expr& e, std::string& out) {
    switch (e->kind) {
    case ExprKind::Constant:
        // the lexer has no negative literals, so hand-built negative constants
        // round-trip to Neg(positive) instead; values are preserved either way
        out += shortest_double(e->constant);
        break;
    case ExprKind::Variable:
        out.push_back('x');
        break;
    case ExprKind::Neg:
        out.push_back('-');
        emit_wrapped(e->a, out);
        break;
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div: {
        char op = e->kind == ExprKind::Add   ? '+'
                  : e->kind == ExprKind::Sub ? '-'
                  : e->kind == ExprKind::Mul ? '*'
                                             : '/';
        emit_wrapped(e->a, out);
        out.push_back(op);
        emit_wrapped(e->b, out);
        break;
    }
    case ExprKind::Pow:
        emit_wrapped(e->a, out);
        out += "^(";
        out += std::to_string(e->pow_num);
        if (e->pow_den != 1) {
            out.push_back('/');
            out += std::to_string(e->pow_den);
        }
        out.push_back(')');
        break;
    case ExprKind::Call:
        out += call_name(e->call);
        out.push_back('(');
        emit(e->a, out);
        out.push_back(')');
        break;
    }
}

} // namespace

Expr parse(const std::string& src) {
    Parser p(src);
    Expr e = p.parse_expr();
    if (p.cur.kind != Tok::End)
        throw ParseError("unexpected trailing input (no implicit multiplication)", p.cur.at);
    return e;
}

std::string to_text(const Expr& e) {
    if (!e) throw DomainError("empty expression");
    std::string out;
    emit(e, out);
    return out;
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
    case ExprKind::Constant: return a->constant == b->constant;
    case ExprKind::Variable: return true;
    case ExprKind::Neg: return expr_equal(a->a, b->a);
    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div: return expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
    case ExprKind::Pow:
        return a->pow_num == b->pow_num && a->pow_den == b->pow_den && expr_equal(a->a, b->a);
    case ExprKind::Call: return a->call == b->call && expr_equal(a->a, b->a);
    }
    return false;
}

Expr ex_const(double v) {
    auto n = make_node(ExprKind::Constant, 0);
    n->constant = v;
    return n;
}

Expr ex_var() { return make_node(ExprKind::Variable, 0); }

Expr ex_neg(Expr a) {
    auto n = make_node(ExprKind::Neg, 0);
    n->a = std::move(a);
    return n;
}

static Expr ex_binary(ExprKind k, Expr a, Expr b) {
    auto n = make_node(k, 0);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

Expr ex_add(Expr a, Expr b) { return ex_binary(ExprKind::Add, std::move(a), std::move(b)); }
Expr ex_sub(Expr a, Expr b) { return ex_binary(ExprKind::Sub, std::move(a), std::move(b)); }
Expr ex_mul(Expr a, Expr b) { return ex_binary(ExprKind::Mul, std::move(a), std::move(b)); }
Expr ex_div(Expr a, Expr b) { return ex_binary(ExprKind::Div, std::move(a), std::move(b)); }

Expr ex_pow(Expr base, long long num, long long den) {
    if (den == 0) throw DomainError("zero denominator in exponent");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    auto n = make_node(ExprKind::Pow, 0);
    n->a = std::move(base);
    n->pow_num = num;
    n->pow_den = den;
    return n;
}

Expr ex_call(CallName f, Expr a) {
    auto n = make_node(ExprKind::Call, 0);
    n->call = f;
    n->a = std::move(a);
    return n;
}

const char* call_name(CallName f) {
    switch (f) {
    case CallName::Sin: return "sin";
    case CallName::Cos: return "cos";
    case CallName::Sinh: return "sinh";
    case CallName::Cosh: return "cosh";
    case CallName::Exp: return "exp";
    case CallName::Ln: return "ln";
    case CallName::Sqrt: return "sqrt";
    case CallName::Abs: return "abs";
    }
    return "?";
}

} // namespace epscalc
