#pragma once

#include <memory>
#include <string>

#include "ordlim/structure.hpp"
#include "ordlim/witness.hpp"

namespace ordlim {

struct Modulus;
using ModulusPtr = std::shared_ptr<const Modulus>;

/// A modulus-of-convergence rule: a deterministic map from a positive
/// epsilon (in the norm's target structure) to an index N. The constructors
/// mirror the index bookkeeping of the underlying proofs:
///
///   constant              N
///   power_gap(b)          least k >= 1 with (1/b)^k < eps
///   bernoulli(r)          least N with N*((1/|r| - 1)*eps) > 1
///   infinitesimal_power(r) degree arithmetic for |r| infinitesimal in Z(X)
///   max_of(a, b)          max of two rules on the same eps
///   shrink_composed(m,i)  i(alpha_r) where M*alpha_r < eps via the shrink witness
///   density_split(a, b)   max(a(beta), b(gamma)) with beta+gamma < eps
///   product_split(...)    the product-of-limits composition
///   exp_shift(i)          2^(i(eps))
///   log2_shift(i)         least k with 2^(k-1)+1 >= i(eps)
///   offset(i, d)          max(1, i(eps) + d)
struct Modulus {
    enum class Rule {
        constant,
        power_gap,
        bernoulli,
        infinitesimal_power,
        max_of,
        shrink_composed,
        density_split,
        product_split,
        exp_shift,
        log2_shift,
        offset,
    };

    Rule rule = Rule::constant;
    BigInt value;           // constant
    Element base;           // power_gap base / bernoulli r / infinitesimal r
    Element m;              // shrink_composed M; product_split s1
    Element m2;             // product_split ||b||
    std::int64_t delta = 0; // offset
    ModulusPtr a, b;        // children

    static ModulusPtr constant(BigInt n) {
        Modulus m;
        m.rule = Rule::constant;
        m.value = std::move(n);
        return wrap(std::move(m));
    }
    static ModulusPtr power_gap(Element base) {
        Modulus m;
        m.rule = Rule::power_gap;
        m.base = std::move(base);
        return wrap(std::move(m));
    }
    static ModulusPtr bernoulli(Element r) {
        Modulus m;
        m.rule = Rule::bernoulli;
        m.base = std::move(r);
        return wrap(std::move(m));
    }
    static ModulusPtr infinitesimal_power(Element r) {
        Modulus m;
        m.rule = Rule::infinitesimal_power;
        m.base = std::move(r);
        return wrap(std::move(m));
    }
    static ModulusPtr max_of(ModulusPtr x, ModulusPtr y) {
        Modulus m;
        m.rule = Rule::max_of;
        m.a = std::move(x);
        m.b = std::move(y);
        return wrap(std::move(m));
    }
    static ModulusPtr shrink_composed(ModulusPtr inner, Element big_m) {
        Modulus m;
        m.rule = Rule::shrink_composed;
        m.a = std::move(inner);
        m.m = std::move(big_m);
        return wrap(std::move(m));
    }
    static ModulusPtr density_split(ModulusPtr x, ModulusPtr y) {
        Modulus m;
        m.rule = Rule::density_split;
        m.a = std::move(x);
        m.b = std::move(y);
        return wrap(std::move(m));
    }
    static ModulusPtr product_split(ModulusPtr mx, ModulusPtr my, Element s1, Element norm_b) {
        Modulus m;
        m.rule = Rule::product_split;
        m.a = std::move(mx);
        m.b = std::move(my);
        m.m = std::move(s1);
        m.m2 = std::move(norm_b);
        return wrap(std::move(m));
    }
    static ModulusPtr exp_shift(ModulusPtr inner) {
        Modulus m;
        m.rule = Rule::exp_shift;
        m.a = std::move(inner);
        return wrap(std::move(m));
    }
    static ModulusPtr log2_shift(ModulusPtr inner) {
        Modulus m;
        m.rule = Rule::log2_shift;
        m.a = std::move(inner);
        return wrap(std::move(m));
    }
    static ModulusPtr offset(ModulusPtr inner, std::int64_t d) {
        Modulus m;
        m.rule = Rule::offset;
        m.a = std::move(inner);
        m.delta = d;
        return wrap(std::move(m));
    }

  private:
    static ModulusPtr wrap(Modulus m) { return std::make_shared<const Modulus>(std::move(m)); }
};

namespace detail {

inline Rational to_rational_scalar(const Element& e) {
    if (std::holds_alternative<Rational>(e)) return std::get<Rational>(e);
    if (std::holds_alternative<Z1p>(e)) return std::get<Z1p>(e).to_rational();
    throw internal_error("BadKind", "expected a scalar carrier");
}

} // namespace detail

/// Evaluates the modulus for a positive eps of the target structure H.
inline BigInt eval_modulus(const ModulusPtr& mod, const Structure& H, const Element& eps) {
    if (!H.is_positive(eps))
        throw precondition_error("NonPositiveEpsilon", "modulus requires eps > 0");
    switch (mod->rule) {
        case Modulus::Rule::constant:
            return mod->value < 1 ? BigInt(1) : mod->value;
        case Modulus::Rule::power_gap: {
            if (H.compare(mod->base, H.one()) <= 0)
                throw precondition_error("NotApplicable", "power_gap base must exceed 1");
            Element v = H.invert(mod->base);
            Element cur = v;
            BigInt k = 1;
            while (H.compare(cur, eps) >= 0) {
                cur = H.mul(cur, v);
                ++k;
                if (k > 100'000'000)
                    throw internal_error("NoGapFound", "power_gap did not shrink below eps");
            }
            return k;
        }
        case Modulus::Rule::bernoulli: {
            // Prop-4.5 index: x = 1/|r| - 1, least N with N*(x*eps) > 1.
            // Computed through Q, which contains both scalar carriers.
            Rational r = detail::to_rational_scalar(mod->base).abs();
            if (r.is_zero()) return 1;
            Rational x = r.inverse() - Rational(1);
            if (x.sign() <= 0)
                throw precondition_error("NotApplicable", "bernoulli rule needs |r| < 1");
            Rational xe = x * detail::to_rational_scalar(eps);
            BigInt n = floor_div(xe.den(), xe.num()) + 1;
            while ((Rational(n) * xe).compare(Rational(1)) <= 0) ++n;
            return n;
        }
        case Modulus::Rule::infinitesimal_power: {
            const auto& r = std::get<RationalFn>(mod->base);
            const auto& e = std::get<RationalFn>(eps);
            RationalFn r_abs = r.abs();
            int dr = r_abs.magnitude_degree();
            if (dr >= 0)
                throw precondition_error("NotApplicable", "rule needs |r| infinitesimal");
            int de = e.magnitude_degree();
            BigInt n = ceil_div(BigInt(-de + 1), BigInt(-dr));
            if (n < 1) n = 1;
            while (r_abs.pow(n).compare(e) >= 0) ++n;
            return n;
        }
        case Modulus::Rule::max_of:
            return std::max(eval_modulus(mod->a, H, eps), eval_modulus(mod->b, H, eps));
        case Modulus::Rule::shrink_composed: {
            auto [al, ar] = shrink_witness_for(H).produce(eps, mod->m);
            (void)al;
            return eval_modulus(mod->a, H, ar);
        }
        case Modulus::Rule::density_split: {
            auto [beta, gamma] = density_witness_for(H).produce(eps);
            return std::max(eval_modulus(mod->a, H, beta), eval_modulus(mod->b, H, gamma));
        }
        case Modulus::Rule::product_split: {
            auto [beta, gamma] = density_witness_for(H).produce(eps);
            ShrinkWitness w = shrink_witness_for(H);
            Element k_r = w.produce(beta, mod->m).second;    // s1 * K_r < beta
            Element m_l = w.produce(gamma, mod->m2).first;   // M_l * ||b|| < gamma
            return std::max(eval_modulus(mod->b, H, k_r), eval_modulus(mod->a, H, m_l));
        }
        case Modulus::Rule::exp_shift: {
            BigInt n = eval_modulus(mod->a, H, eps);
            if (n > 100'000'000)
                throw internal_error("EvaluationTooLarge", "exp_shift index out of range");
            return BigInt(1) << static_cast<std::uint64_t>(n);
        }
        case Modulus::Rule::log2_shift: {
            BigInt n = eval_modulus(mod->a, H, eps);
            BigInt m = n - 1;
            if (m < 1) m = 1;
            // least k with 2^(k-1) >= m, i.e. k = ceil(log2(m)) + 1
            std::uint64_t bits = bit_length(m);
            BigInt ceil_log2 = (m == (BigInt(1) << (bits - 1))) ? BigInt(bits - 1) : BigInt(bits);
            return ceil_log2 + 1;
        }
        case Modulus::Rule::offset: {
            BigInt n = eval_modulus(mod->a, H, eps) + mod->delta;
            return n < 1 ? BigInt(1) : n;
        }
    }
    throw internal_error("BadModulus", "unreachable");
}

} // namespace ordlim
