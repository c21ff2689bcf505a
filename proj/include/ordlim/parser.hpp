#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>

#include "ordlim/structure.hpp"

namespace ordlim {

// --- term expressions -------------------------------------------------------

/// AST for sequence-term expressions in the index variable n.
/// Exponents are restricted to affine forms a*n + b with a, b >= 0.
struct TermExpr;
using TermExprPtr = std::shared_ptr<const TermExpr>;

struct TermExpr {
    enum class Op { literal, var_n, var_x, add, sub, mul, div, neg, pow };

    Op op = Op::literal;
    BigInt literal;        // Op::literal
    TermExprPtr lhs, rhs;  // binary ops; lhs for neg/pow
    BigInt exp_a, exp_b;   // Op::pow exponent a*n + b

    std::string text; // source text, kept for rendering certificates
};

namespace detail {

class Cursor {
  public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool eof() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw usage_error("SyntaxError",
                          what + " at position " + std::to_string(pos_));
    }
    std::size_t pos() const { return pos_; }
    void seek(std::size_t p) { pos_ = p; }

    BigInt integer() {
        skip_ws();
        bool negative = accept('-');
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected integer");
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            digits += text_[pos_++];
        BigInt v(digits);
        return negative ? -v : v;
    }

    bool at_digit() {
        skip_ws();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

// int literal, optionally wrapped in one level of parentheses: 7, -7, (-7)
inline BigInt parenthesizable_int(Cursor& cur) {
    if (cur.peek() == '(') {
        cur.expect('(');
        BigInt v = cur.integer();
        cur.expect(')');
        return v;
    }
    return cur.integer();
}

inline Rational parse_rational_text(Cursor& cur) {
    BigInt num = parenthesizable_int(cur);
    if (cur.accept('/')) {
        BigInt den = parenthesizable_int(cur);
        if (den.is_zero())
            throw usage_error("NonCanonicalizable", "zero denominator");
        if (den < 0) cur.fail("denominator must be positive");
        return Rational(num, den);
    }
    return Rational(num);
}

// poly := term { (+|-) term } ; term := [int *] X [^ posint] | int
inline IntPoly parse_poly(Cursor& cur) {
    IntPoly result;
    bool first = true;
    while (true) {
        int sign = 1;
        if (cur.peek() == '+' || cur.peek() == '-') {
            sign = cur.accept('+') ? 1 : (cur.expect('-'), -1);
        } else if (!first) {
            break;
        }
        BigInt coeff = 1;
        bool saw_coeff = false;
        if (cur.at_digit()) {
            coeff = cur.integer();
            saw_coeff = true;
            if (cur.accept('*')) {
                if (cur.peek() != 'X') cur.fail("expected X");
            }
        }
        std::size_t degree = 0;
        if (cur.accept('X')) {
            degree = 1;
            if (cur.accept('^')) {
                BigInt d = cur.integer();
                if (d < 0) cur.fail("polynomial exponent must be non-negative");
                if (d > 10000) cur.fail("polynomial exponent too large");
                degree = static_cast<std::size_t>(d);
            }
        } else if (!saw_coeff) {
            if (first) cur.fail("expected polynomial term");
            cur.fail("expected term after sign");
        }
        if (sign < 0) coeff = -coeff;
        result = result + IntPoly::monomial(coeff, degree);
        first = false;
        char next = cur.peek();
        if (next != '+' && next != '-') break;
    }
    return result;
}

// rfunc := "(" poly ")" "/" "(" poly ")" | monomial "/" monomial-or-paren | poly
inline RationalFn parse_rfunc(Cursor& cur) {
    auto parse_side = [&cur](bool& parenthesized) {
        parenthesized = false;
        if (cur.peek() == '(') {
            std::size_t mark = cur.pos();
            cur.expect('(');
            // Could be "(-7)" style integer parens or a parenthesized poly.
            IntPoly p = parse_poly(cur);
            if (cur.peek() == ')') {
                cur.expect(')');
                parenthesized = true;
                return p;
            }
            cur.seek(mark);
        }
        return parse_poly(cur);
    };

    bool num_paren = false;
    std::size_t start = cur.pos();
    IntPoly num = parse_side(num_paren);
    if (!cur.accept('/')) return RationalFn(num, IntPoly(BigInt(1)));
    // A quotient: unparenthesized numerators must be single monomials to
    // keep "X-2/X" unambiguous.
    if (!num_paren) {
        std::size_t nonzero_terms = 0;
        for (const auto& c : num.coeffs())
            if (!c.is_zero()) ++nonzero_terms;
        if (nonzero_terms > 1) {
            cur.seek(start);
            cur.fail("ambiguous rational function; parenthesize numerator");
        }
    }
    bool den_paren = false;
    IntPoly den = parse_side(den_paren);
    if (den.is_zero()) throw usage_error("NonCanonicalizable", "zero denominator");
    return RationalFn(std::move(num), std::move(den));
}

} // namespace detail

/// Parses an element literal in the given structure's grammar and returns
/// its canonical form. Round-trips through render().
inline Element parse_element(std::string_view text, const Structure& S) {
    detail::Cursor cur(text);
    Element result = S.zero();
    switch (S.kind) {
        case Kind::rational: {
            result = detail::parse_rational_text(cur);
            break;
        }
        case Kind::z1p: {
            Rational r = detail::parse_rational_text(cur);
            result = Z1p::from_rational(S.p, r);
            break;
        }
        case Kind::zx: {
            result = detail::parse_rfunc(cur);
            break;
        }
        case Kind::maxtimes: {
            Rational r = detail::parse_rational_text(cur);
            if (r.is_zero()) {
                result = MaxTimes::bottom();
            } else if (r.sign() < 0) {
                throw usage_error("WrongStructure", "G0 elements are 0 or positive rationals");
            } else {
                result = MaxTimes(r);
            }
            break;
        }
    }
    if (!cur.eof()) cur.fail("trailing input");
    if (S.nonneg_only && S.compare(result, S.zero()) < 0)
        throw usage_error("WrongStructure", "negative element in non-negative cone " + S.id);
    return result;
}

// --- term-expression parsing -------------------------------------------------

namespace detail {

inline TermExprPtr make_expr(TermExpr e) { return std::make_shared<const TermExpr>(std::move(e)); }

TermExprPtr parse_expr_add(Cursor& cur);

// exp := posint | [posint "*"] "n" ["+" posint], optionally parenthesized.
inline std::pair<BigInt, BigInt> parse_affine_exponent(Cursor& cur) {
    bool paren = cur.accept('(');
    BigInt a = 0, b = 0;
    if (cur.at_digit()) {
        BigInt k = cur.integer();
        if (k < 0) cur.fail("exponent must be non-negative");
        if (cur.accept('*')) {
            if (!cur.accept('n')) cur.fail("expected n after *");
            a = k;
            if (cur.accept('+')) {
                b = cur.integer();
                if (b < 0) cur.fail("exponent offset must be non-negative");
            }
        } else {
            b = k;
        }
    } else if (cur.accept('n')) {
        a = 1;
        if (cur.accept('+')) {
            b = cur.integer();
            if (b < 0) cur.fail("exponent offset must be non-negative");
        }
    } else {
        cur.fail("expected exponent");
    }
    if (paren) cur.expect(')');
    return {a, b};
}

inline TermExprPtr parse_expr_atom(Cursor& cur) {
    char c = cur.peek();
    if (c == '(') {
        cur.expect('(');
        TermExprPtr inner = parse_expr_add(cur);
        cur.expect(')');
        return inner;
    }
    if (c == 'n') {
        cur.accept('n');
        TermExpr e;
        e.op = TermExpr::Op::var_n;
        return make_expr(std::move(e));
    }
    if (c == 'X') {
        cur.accept('X');
        TermExpr e;
        e.op = TermExpr::Op::var_x;
        return make_expr(std::move(e));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
        TermExpr e;
        e.op = TermExpr::Op::literal;
        e.literal = cur.integer();
        return make_expr(std::move(e));
    }
    cur.fail("expected atom");
}

inline TermExprPtr parse_expr_power(Cursor& cur) {
    TermExprPtr base = parse_expr_atom(cur);
    if (!cur.accept('^')) return base;
    std::size_t mark = cur.pos();
    try {
        auto [a, b] = parse_affine_exponent(cur);
        TermExpr e;
        e.op = TermExpr::Op::pow;
        e.lhs = base;
        e.exp_a = a;
        e.exp_b = b;
        return make_expr(std::move(e));
    } catch (const Error&) {
        // If the exponent parses as a general expression it is merely
        // non-affine rather than malformed.
        cur.seek(mark);
        bool paren = cur.accept('(');
        try {
            (void)parse_expr_add(cur);
            if (paren) cur.expect(')');
        } catch (const Error&) {
            cur.seek(mark);
            cur.fail("malformed exponent");
        }
        throw usage_error("NonAffineExponent",
                          "exponents must be affine in n (a*n + b) at position " +
                              std::to_string(mark));
    }
}

inline TermExprPtr parse_expr_unary(Cursor& cur) {
    if (cur.accept('-')) {
        TermExpr e;
        e.op = TermExpr::Op::neg;
        e.lhs = parse_expr_unary(cur);
        return make_expr(std::move(e));
    }
    return parse_expr_power(cur);
}

inline TermExprPtr parse_expr_mul(Cursor& cur) {
    TermExprPtr lhs = parse_expr_unary(cur);
    while (true) {
        char c = cur.peek();
        if (c != '*' && c != '/') return lhs;
        cur.accept(c);
        TermExpr e;
        e.op = (c == '*') ? TermExpr::Op::mul : TermExpr::Op::div;
        e.lhs = lhs;
        e.rhs = parse_expr_unary(cur);
        lhs = make_expr(std::move(e));
    }
}

inline TermExprPtr parse_expr_add(Cursor& cur) {
    TermExprPtr lhs = parse_expr_mul(cur);
    while (true) {
        char c = cur.peek();
        if (c != '+' && c != '-') return lhs;
        cur.accept(c);
        TermExpr e;
        e.op = (c == '+') ? TermExpr::Op::add : TermExpr::Op::sub;
        e.lhs = lhs;
        e.rhs = parse_expr_mul(cur);
        lhs = make_expr(std::move(e));
    }
}

} // namespace detail

inline TermExprPtr parse_term_expression(std::string_view text) {
    detail::Cursor cur(text);
    TermExprPtr expr = detail::parse_expr_add(cur);
    if (!cur.eof()) cur.fail("trailing input");
    auto owned = std::make_shared<TermExpr>(*expr);
    owned->text = std::string(text);
    return owned;
}

/// Exact evaluation of a term expression at index n.
inline Element evaluate_term(const TermExprPtr& expr, const BigInt& n, const Structure& S) {
    switch (expr->op) {
        case TermExpr::Op::literal:
            return S.from_integer(expr->literal);
        case TermExpr::Op::var_n:
            return S.from_integer(n);
        case TermExpr::Op::var_x:
            if (S.kind != Kind::zx)
                throw usage_error("WrongStructure", "X only exists in Z(X)");
            return RationalFn::variable();
        case TermExpr::Op::add:
            return S.add(evaluate_term(expr->lhs, n, S), evaluate_term(expr->rhs, n, S));
        case TermExpr::Op::sub:
            return S.sub(evaluate_term(expr->lhs, n, S), evaluate_term(expr->rhs, n, S));
        case TermExpr::Op::mul:
            return S.mul(evaluate_term(expr->lhs, n, S), evaluate_term(expr->rhs, n, S));
        case TermExpr::Op::div: {
            Element den = evaluate_term(expr->rhs, n, S);
            if (S.is_zero(den))
                throw precondition_error("DivisionByZero",
                                         "division by zero at n = " + n.str());
            return S.mul(evaluate_term(expr->lhs, n, S), S.invert(den));
        }
        case TermExpr::Op::neg:
            return S.neg(evaluate_term(expr->lhs, n, S));
        case TermExpr::Op::pow: {
            BigInt e = expr->exp_a * n + expr->exp_b;
            if (e < 0)
                throw precondition_error("NegativeExponent", "negative exponent at n = " + n.str());
            return S.pow(evaluate_term(expr->lhs, n, S), e);
        }
    }
    throw internal_error("BadExpr", "unreachable");
}

} // namespace ordlim
