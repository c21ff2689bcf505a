#pragma once

#include <functional>
#include <utility>

#include "ordlim/structure.hpp"

namespace ordlim {

/// Density witness (for dense structures): maps positive epsilon to a pair
/// (beta, gamma) of positive elements with beta + gamma < epsilon.
struct DensityWitness {
    std::function<std::pair<Element, Element>(const Element&)> produce;
};

/// Shrink witness (for shrinkable structures): maps positive (alpha, M) to
/// positive (alpha_l, alpha_r) with alpha_l * M < alpha and M * alpha_r < alpha.
struct ShrinkWitness {
    std::function<std::pair<Element, Element>(const Element&, const Element&)> produce;
};

namespace detail {

inline Element two_fifths(const Structure& S, const Element& eps) {
    switch (S.kind) {
        case Kind::rational:
            return std::get<Rational>(eps) * Rational(BigInt(2), BigInt(5));
        case Kind::zx:
            return std::get<RationalFn>(eps) * RationalFn(Rational(BigInt(2), BigInt(5)));
        case Kind::maxtimes:
            return MaxTimes(std::get<MaxTimes>(eps).value() * Rational(BigInt(2), BigInt(5)));
        default:
            throw internal_error("BadKind", "2eps/5 rule does not apply to " + S.id);
    }
}

} // namespace detail

/// Witness constructions, per structure family:
///  - fields and non-negative cones of fields use beta = gamma = 2*eps/5;
///  - Z[1/p] uses eps/p for p >= 3 and eps/4 for p = 2 (kept exactly
///    representable with 2*beta < eps);
///  - G0 over (Q+,*) uses 2*eps/5, where "+" is max so the requirement is
///    max(beta, gamma) < eps.
inline DensityWitness density_witness_for(const Structure& S) {
    if (!S.caps.dense)
        throw precondition_error("NotDense", "structure " + S.id + " is not flagged dense");
    DensityWitness w;
    if (S.kind == Kind::z1p) {
        std::int64_t p = S.p;
        w.produce = [&S, p](const Element& eps) {
            if (!S.is_positive(eps))
                throw precondition_error("NotDense", "density witness needs eps > 0");
            std::int64_t shift = (p == 2) ? 2 : 1;
            Z1p beta = std::get<Z1p>(eps) * Z1p(p, 1, shift);
            return std::make_pair(Element(beta), Element(beta));
        };
        return w;
    }
    w.produce = [&S](const Element& eps) {
        if (!S.is_positive(eps))
            throw precondition_error("NotDense", "density witness needs eps > 0");
        Element b = detail::two_fifths(S, eps);
        return std::make_pair(b, b);
    };
    return w;
}

inline ShrinkWitness shrink_witness_for(const Structure& S) {
    if (!S.caps.shrinkable)
        throw precondition_error("NotShrinkable",
                                 "structure " + S.id + " is not flagged shrinkable");
    ShrinkWitness w;
    if (S.kind == Kind::z1p) {
        // alpha_l = alpha_r = 1/p^n for the least n with M < alpha * p^n;
        // the incremental search terminates because Z[1/p] is Archimedean.
        std::int64_t p = S.p;
        w.produce = [&S, p](const Element& alpha, const Element& M) {
            if (!S.is_positive(alpha) || !S.is_positive(M))
                throw precondition_error("NotShrinkable", "shrink witness needs alpha, M > 0");
            Element scaled = alpha;
            std::int64_t n = 0;
            while (S.compare(M, scaled) >= 0) {
                scaled = S.mul(scaled, Element(Z1p(p, p)));
                ++n;
            }
            Element a = Element(Z1p(p, 1, n));
            return std::make_pair(a, a);
        };
        return w;
    }
    // Division route: pick beta < alpha from the density witness and set
    // alpha_r = M^-1 * beta, alpha_l = beta * M^-1.
    w.produce = [&S](const Element& alpha, const Element& M) {
        if (!S.is_positive(alpha) || !S.is_positive(M))
            throw precondition_error("NotShrinkable", "shrink witness needs alpha, M > 0");
        Element beta = density_witness_for(S).produce(alpha).first;
        Element minv = S.invert(M);
        return std::make_pair(S.mul(beta, minv), S.mul(minv, beta));
    };
    return w;
}

} // namespace ordlim
