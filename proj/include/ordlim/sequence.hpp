#pragma once

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "ordlim/parser.hpp"
#include "ordlim/structure.hpp"

namespace ordlim {

class Sequence;
using SeqPtr = std::shared_ptr<const Sequence>;

/// A symbolic sequence n -> element, built from a closed constructor
/// algebra. Terms are exact; evaluation beyond the size budget throws
/// EvaluationTooLarge (validators then fall back to monotone bounds).
///
/// Index conventions: Geometric and Condensed start at 0, expression- and
/// table-backed sequences at 1; PartialSums(x)(n) sums x from its start
/// through n; Condensed(x)(i) = 2^i * x(2^i) exactly.
class Sequence : public std::enable_shared_from_this<Sequence> {
  public:
    enum class Ctor {
        expression,
        geometric,
        partial_sums,
        condensed,
        scaled,
        sum,
        product,
        shifted,
        table_then,
    };

    static SeqPtr from_expression(const Structure& S, TermExprPtr expr) {
        auto s = make(S, Ctor::expression);
        s->expr_ = std::move(expr);
        return s;
    }
    static SeqPtr from_expression(const Structure& S, std::string_view text) {
        return from_expression(S, parse_term_expression(text));
    }
    static SeqPtr geometric(const Structure& S, Element r) {
        auto s = make(S, Ctor::geometric);
        s->elem_ = std::move(r);
        return s;
    }
    static SeqPtr partial_sums(const SeqPtr& of) {
        auto s = make(of->structure(), Ctor::partial_sums);
        s->a_ = of;
        return s;
    }
    static SeqPtr condensed(const SeqPtr& of) {
        auto s = make(of->structure(), Ctor::condensed);
        s->a_ = of;
        return s;
    }
    static SeqPtr scaled(Element c, const SeqPtr& of) {
        auto s = make(of->structure(), Ctor::scaled);
        s->elem_ = std::move(c);
        s->a_ = of;
        return s;
    }
    static SeqPtr sum(const SeqPtr& a, const SeqPtr& b) {
        auto s = make(a->structure(), Ctor::sum);
        s->a_ = a;
        s->b_ = b;
        return s;
    }
    static SeqPtr product(const SeqPtr& a, const SeqPtr& b) {
        auto s = make(a->structure(), Ctor::product);
        s->a_ = a;
        s->b_ = b;
        return s;
    }
    static SeqPtr shifted(const BigInt& k, const SeqPtr& of) {
        auto s = make(of->structure(), Ctor::shifted);
        s->shift_ = k;
        s->a_ = of;
        return s;
    }
    static SeqPtr table_then(const Structure& S, std::vector<Element> table, const SeqPtr& of) {
        auto s = make(S, Ctor::table_then);
        s->table_ = std::move(table);
        s->a_ = of;
        return s;
    }
    static SeqPtr constant(const Structure& S, const Element& c) {
        return scaled(c, geometric(S, S.one()));
    }

    Ctor ctor() const { return ctor_; }
    const Structure& structure() const { return *S_; }
    const Element& element() const { return elem_; } // r for geometric, c for scaled
    const TermExprPtr& expression() const { return expr_; }
    const SeqPtr& inner() const { return a_; }
    const SeqPtr& second() const { return b_; }
    const std::vector<Element>& table() const { return table_; }
    const BigInt& shift() const { return shift_; }

    BigInt start() const {
        switch (ctor_) {
            case Ctor::geometric:
            case Ctor::condensed: return 0;
            case Ctor::expression:
            case Ctor::table_then: return 1;
            case Ctor::partial_sums:
            case Ctor::scaled: return a_->start();
            case Ctor::sum:
            case Ctor::product: return std::max(a_->start(), b_->start());
            case Ctor::shifted: {
                BigInt s = a_->start() - shift_;
                return s < 0 ? BigInt(0) : s;
            }
        }
        throw internal_error("BadCtor", "unreachable");
    }

    Element term(const BigInt& n) const {
        if (n < start())
            throw precondition_error("IndexBeforeStart",
                                     "index " + n.str() + " precedes sequence start");
        switch (ctor_) {
            case Ctor::expression: return evaluate_term(expr_, n, *S_);
            case Ctor::geometric: return S_->pow(elem_, n);
            case Ctor::partial_sums: return partial_sum_value(n);
            case Ctor::condensed: {
                if (n > 10'000'000)
                    throw internal_error("EvaluationTooLarge",
                                         "condensed index 2^" + n.str() + " out of reach");
                BigInt idx = BigInt(1) << static_cast<std::uint64_t>(n);
                return S_->mul_by_count(idx, a_->term(idx));
            }
            case Ctor::scaled: return S_->mul(elem_, a_->term(n));
            case Ctor::sum: return S_->add(a_->term(n), b_->term(n));
            case Ctor::product: return S_->mul(a_->term(n), b_->term(n));
            case Ctor::shifted: return a_->term(n + shift_);
            case Ctor::table_then: {
                if (n <= static_cast<std::int64_t>(table_.size()))
                    return table_[static_cast<std::size_t>(n - 1)];
                return a_->term(n);
            }
        }
        throw internal_error("BadCtor", "unreachable");
    }

    /// Terms for indices a..b inclusive, using incremental evaluation for
    /// power-shaped subterms so windows at large indices stay cheap.
    std::vector<Element> window(const BigInt& lo, const BigInt& hi) const;

    /// Closed form for partial sums when one exists (geometric tails and
    /// their scalings/sums).
    std::optional<Element> closed_form_partial_sum(const BigInt& n) const;

  private:
    static std::shared_ptr<Sequence> make(const Structure& S, Ctor c) {
        auto s = std::make_shared<Sequence>();
        s->S_ = &S;
        s->ctor_ = c;
        return s;
    }

    Element partial_sum_value(const BigInt& n) const {
        if (auto cf = a_->closed_form_partial_sum(n)) return *cf;
        std::lock_guard<std::mutex> lock(memo_mu_);
        BigInt i;
        Element acc = S_->zero();
        if (memo_valid_ && memo_n_ <= n) {
            i = memo_n_ + 1;
            acc = memo_value_;
        } else {
            i = a_->start();
        }
        for (; i <= n; ++i) acc = S_->add(acc, a_->term(i));
        memo_valid_ = true;
        memo_n_ = n;
        memo_value_ = acc;
        return acc;
    }

  public:
    Sequence() = default;

  private:
    const Structure* S_ = nullptr;
    Ctor ctor_ = Ctor::expression;
    Element elem_;
    TermExprPtr expr_;
    SeqPtr a_, b_;
    BigInt shift_;
    std::vector<Element> table_;

    mutable std::mutex memo_mu_;
    mutable bool memo_valid_ = false;
    mutable BigInt memo_n_;
    mutable Element memo_value_;
};

inline Element partial_sum(const SeqPtr& seq, const BigInt& n) {
    return Sequence::partial_sums(seq)->term(n);
}

namespace detail {

// Evaluates an expression over a contiguous index window, stepping powers of
// n-free bases incrementally instead of re-exponentiating per index.
inline std::vector<Element> expr_window(const TermExprPtr& e, const Structure& S,
                                        const BigInt& lo, const BigInt& hi) {
    std::size_t count = static_cast<std::size_t>(hi - lo + 1);
    std::vector<Element> out;
    out.reserve(count);
    switch (e->op) {
        case TermExpr::Op::literal: {
            Element v = S.from_integer(e->literal);
            out.assign(count, v);
            return out;
        }
        case TermExpr::Op::var_x: {
            Element v = evaluate_term(e, lo, S);
            out.assign(count, v);
            return out;
        }
        case TermExpr::Op::var_n: {
            for (BigInt n = lo; n <= hi; ++n) out.push_back(S.from_integer(n));
            return out;
        }
        case TermExpr::Op::neg: {
            out = expr_window(e->lhs, S, lo, hi);
            for (auto& v : out) v = S.neg(v);
            return out;
        }
        case TermExpr::Op::add:
        case TermExpr::Op::sub:
        case TermExpr::Op::mul:
        case TermExpr::Op::div: {
            auto l = expr_window(e->lhs, S, lo, hi);
            auto r = expr_window(e->rhs, S, lo, hi);
            for (std::size_t i = 0; i < count; ++i) {
                switch (e->op) {
                    case TermExpr::Op::add: out.push_back(S.add(l[i], r[i])); break;
                    case TermExpr::Op::sub: out.push_back(S.sub(l[i], r[i])); break;
                    case TermExpr::Op::mul: out.push_back(S.mul(l[i], r[i])); break;
                    default:
                        if (S.is_zero(r[i]))
                            throw precondition_error("DivisionByZero",
                                                     "division by zero in window");
                        out.push_back(S.mul(l[i], S.invert(r[i])));
                }
            }
            return out;
        }
        case TermExpr::Op::pow: {
            bool base_has_n = false;
            {
                // Walk for var_n occurrences in the base.
                std::vector<const TermExpr*> stack{e->lhs.get()};
                while (!stack.empty()) {
                    const TermExpr* t = stack.back();
                    stack.pop_back();
                    if (t->op == TermExpr::Op::var_n) base_has_n = true;
                    if (t->lhs) stack.push_back(t->lhs.get());
                    if (t->rhs) stack.push_back(t->rhs.get());
                }
            }
            if (base_has_n || e->exp_a.is_zero()) {
                for (BigInt n = lo; n <= hi; ++n) out.push_back(evaluate_term(e, n, S));
                return out;
            }
            Element base = evaluate_term(e->lhs, 1, S);
            Element step = S.pow(base, e->exp_a);
            Element cur = S.pow(base, e->exp_a * lo + e->exp_b);
            for (BigInt n = lo; n <= hi; ++n) {
                out.push_back(cur);
                if (n < hi) cur = S.mul(cur, step);
            }
            return out;
        }
    }
    throw internal_error("BadExpr", "unreachable");
}

} // namespace detail

inline std::vector<Element> Sequence::window(const BigInt& lo, const BigInt& hi) const {
    if (lo < start())
        throw precondition_error("IndexBeforeStart", "window precedes sequence start");
    std::size_t count = static_cast<std::size_t>(hi - lo + 1);
    std::vector<Element> out;
    out.reserve(count);
    switch (ctor_) {
        case Ctor::expression:
            return detail::expr_window(expr_, *S_, lo, hi);
        case Ctor::geometric: {
            Element cur = S_->pow(elem_, lo);
            for (BigInt n = lo; n <= hi; ++n) {
                out.push_back(cur);
                if (n < hi) cur = S_->mul(cur, elem_);
            }
            return out;
        }
        case Ctor::partial_sums: {
            Element acc = term(lo);
            auto tail = a_->window(lo + 1, hi);
            out.push_back(acc);
            for (auto& t : tail) {
                acc = S_->add(acc, t);
                out.push_back(acc);
            }
            return out;
        }
        case Ctor::scaled: {
            out = a_->window(lo, hi);
            for (auto& v : out) v = S_->mul(elem_, v);
            return out;
        }
        case Ctor::sum:
        case Ctor::product: {
            auto l = a_->window(lo, hi);
            auto r = b_->window(lo, hi);
            for (std::size_t i = 0; i < count; ++i)
                out.push_back(ctor_ == Ctor::sum ? S_->add(l[i], r[i]) : S_->mul(l[i], r[i]));
            return out;
        }
        case Ctor::shifted:
            return a_->window(lo + shift_, hi + shift_);
        case Ctor::condensed:
        case Ctor::table_then: {
            for (BigInt n = lo; n <= hi; ++n) out.push_back(term(n));
            return out;
        }
    }
    throw internal_error("BadCtor", "unreachable");
}

inline std::optional<Element> Sequence::closed_form_partial_sum(const BigInt& n) const {
    switch (ctor_) {
        case Ctor::geometric: {
            const Element& r = elem_;
            if (S_->equal(r, S_->one()))
                return S_->from_integer(n + 1); // sum of n+1 ones
            Element one_minus_r = S_->sub(S_->one(), r);
            // (1 - r^(n+1)) / (1 - r), computed in the carrier when 1-r is
            // invertible there, otherwise through Q (the value stays in the
            // carrier because it is a finite sum of carrier elements).
            Element numer = S_->sub(S_->one(), S_->pow(r, n + 1));
            try {
                return S_->mul(numer, S_->invert(one_minus_r));
            } catch (const Error&) {
                if (S_->kind != Kind::z1p) return std::nullopt;
                Rational rq = std::get<Z1p>(numer).to_rational() /
                              std::get<Z1p>(one_minus_r).to_rational();
                return Element(Z1p::from_rational(S_->p, rq));
            }
        }
        case Ctor::scaled: {
            auto cf = a_->closed_form_partial_sum(n);
            if (!cf) return std::nullopt;
            return S_->mul(elem_, *cf);
        }
        case Ctor::sum: {
            if (a_->start() != b_->start()) return std::nullopt;
            auto ca = a_->closed_form_partial_sum(n);
            if (!ca) return std::nullopt;
            auto cb = b_->closed_form_partial_sum(n);
            if (!cb) return std::nullopt;
            return S_->add(*ca, *cb);
        }
        default:
            return std::nullopt;
    }
}

/// Exact upper bound for sum_{i=a}^{b} u(i), valid when u is positive and
/// decreasing (an assumption recorded on the certificate that requests the
/// bound). Falls back through smaller anchor indices until one is cheap
/// enough to evaluate; nullopt when none is.
inline std::optional<Element> decreasing_range_sum_bound(const SeqPtr& u, const BigInt& a,
                                                         const BigInt& b) {
    const Structure& S = u->structure();
    bool is_condensed = u->ctor() == Sequence::Ctor::condensed;
    const SeqPtr& base = is_condensed ? u->inner() : u;

    if (is_condensed && b > 1'000'000) return std::nullopt;
    for (int cap_bits : {21, 16, 12, 8, 4, 0}) {
        BigInt anchor = std::min(a, BigInt(std::int64_t(1) << cap_bits));
        BigInt anchor_index = is_condensed ? (BigInt(1) << static_cast<std::uint64_t>(anchor))
                                           : anchor;
        if (anchor_index < base->start()) continue;
        try {
            Element head = base->term(anchor_index);
            if (is_condensed) {
                // sum_{i=a}^{b} 2^i x(2^i) <= x(2^anchor) * (2^(b+1) - 2^a)
                BigInt factor = (BigInt(1) << static_cast<std::uint64_t>(b + 1)) -
                                (BigInt(1) << static_cast<std::uint64_t>(a));
                return S.mul_by_count(factor, head);
            }
            // sum_{i=a}^{b} u(i) <= (b - a + 1) * u(anchor)
            return S.mul_by_count(b - a + 1, head);
        } catch (const Error& e) {
            if (e.code() != "EvaluationTooLarge") throw;
        }
    }
    return std::nullopt;
}

} // namespace ordlim
