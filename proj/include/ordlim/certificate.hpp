#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ordlim/modulus.hpp"
#include "ordlim/norms.hpp"
#include "ordlim/sequence.hpp"

namespace ordlim {

inline constexpr std::int64_t kDefaultProbeDepth = 64;
inline constexpr std::int64_t kDefaultPrecheckWindow = 256;

/// Assumption tags recorded on certificates whose constructors verified a
/// precondition on a finite window and assume it globally (the paper's
/// hypotheses are global; finite probing cannot discharge them).
inline constexpr const char* kAssumePositiveDecreasing = "terms-positive-decreasing";
inline constexpr const char* kAssumeGeometricOnProbe = "geometric-shape-verified-on-probe";

/// Claim: for every eps > 0 and n >= modulus(eps), ||x_n - limit|| < eps.
struct ConvergenceCertificate {
    SeqPtr seq;
    Element limit;
    ModulusPtr modulus;
    Pseudonorm norm;
    std::vector<std::string> assumptions;
    bool trusted_by_construction = false;
};

/// Claim: for every eps > 0 and n >= m >= modulus(eps), ||x_n - x_m|| < eps.
struct CauchyCertificate {
    SeqPtr seq;
    ModulusPtr modulus;
    Pseudonorm norm;
    std::vector<std::string> assumptions;
    bool trusted_by_construction = false;
};

struct Violation {
    std::string epsilon;
    BigInt n;
    std::optional<BigInt> m; // set for Cauchy pair violations
    std::string gap;
};

struct ValidationReport {
    bool pass = true;
    std::vector<Violation> violations;
    std::uint64_t eps_checked = 0;
    std::uint64_t points_checked = 0;  // direct evaluations
    std::uint64_t bound_decided = 0;   // decided by a monotone bound
};

namespace detail {

inline bool has_assumption(const std::vector<std::string>& a, const char* tag) {
    for (const auto& s : a)
        if (s == tag) return true;
    return false;
}

inline void add_violation(ValidationReport& report, const Element& eps, const BigInt& n,
                          std::optional<BigInt> m, const std::string& gap) {
    report.pass = false;
    if (report.violations.size() < 200)
        report.violations.push_back(Violation{render(eps), n, std::move(m), gap});
}

} // namespace detail

/// Finite check of the convergence contract: for each eps, all indices in
/// [modulus(eps), modulus(eps) + K] must put the normed gap below eps.
inline ValidationReport validate_convergence(const ConvergenceCertificate& cert,
                                             const std::vector<Element>& eps_samples,
                                             std::int64_t probe_depth = kDefaultProbeDepth) {
    if (eps_samples.empty())
        throw precondition_error("NoEpsilonSamples", "need at least one positive eps");
    const Structure& S = cert.seq->structure();
    const Structure& H = cert.norm.target();
    ValidationReport report;
    for (const Element& eps : eps_samples) {
        ++report.eps_checked;
        BigInt n0 = eval_modulus(cert.modulus, H, eps);
        BigInt lo = std::max(n0, cert.seq->start());
        BigInt hi = lo + probe_depth;
        std::vector<Element> values;
        bool evaluated = true;
        try {
            values = cert.seq->window(lo, hi);
        } catch (const Error& e) {
            if (e.code() != "EvaluationTooLarge") throw;
            evaluated = false;
        }
        if (evaluated) {
            for (BigInt n = lo; n <= hi; ++n) {
                const Element& x = values[static_cast<std::size_t>(n - lo)];
                Element gap = cert.norm(S.sub(x, cert.limit));
                ++report.points_checked;
                if (H.compare(gap, eps) >= 0)
                    detail::add_violation(report, eps, n, std::nullopt, render(gap));
            }
            continue;
        }
        // Out of exact reach: a limit-0 certificate over positive decreasing
        // terms can still be decided by anchoring the bound at a feasible
        // smaller index.
        bool bounded = false;
        if (S.is_zero(cert.limit) &&
            detail::has_assumption(cert.assumptions, kAssumePositiveDecreasing)) {
            if (auto bound = decreasing_range_sum_bound(cert.seq, lo, lo)) {
                Element nb = cert.norm(*bound);
                if (H.compare(nb, eps) < 0) {
                    report.bound_decided += static_cast<std::uint64_t>(probe_depth) + 1;
                    bounded = true;
                }
            }
        }
        if (!bounded)
            detail::add_violation(report, eps, lo, std::nullopt, "unevaluable at this scale");
    }
    return report;
}

/// Finite check of the Cauchy contract over all pairs m <= n in the window.
/// For series (partial-sum sequences) the gap is the exact sum of the
/// underlying terms over (m, n], so no large partial sum is materialized.
inline ValidationReport validate_cauchy(const CauchyCertificate& cert,
                                        const std::vector<Element>& eps_samples,
                                        std::int64_t probe_depth = kDefaultProbeDepth) {
    if (eps_samples.empty())
        throw precondition_error("NoEpsilonSamples", "need at least one positive eps");
    const Structure& S = cert.seq->structure();
    const Structure& H = cert.norm.target();
    bool is_series = cert.seq->ctor() == Sequence::Ctor::partial_sums;
    bool assume_decreasing =
        detail::has_assumption(cert.assumptions, kAssumePositiveDecreasing) &&
        cert.norm.family() == Pseudonorm::Family::abs;

    ValidationReport report;
    for (const Element& eps : eps_samples) {
        ++report.eps_checked;
        BigInt n0 = eval_modulus(cert.modulus, H, eps);
        BigInt lo = std::max(n0, cert.seq->start());
        BigInt hi = lo + probe_depth;
        std::uint64_t pair_count =
            static_cast<std::uint64_t>(probe_depth) * (probe_depth + 1) / 2;

        if (is_series) {
            const SeqPtr& u = cert.seq->inner();
            // All pair gaps nest inside the full window sum; for positive
            // decreasing terms an anchored bound settles every pair at once.
            if (assume_decreasing) {
                if (auto bound = decreasing_range_sum_bound(u, lo + 1, hi)) {
                    if (H.compare(cert.norm(*bound), eps) < 0) {
                        report.bound_decided += pair_count;
                        continue;
                    }
                }
            }
            std::vector<Element> terms;
            bool evaluated = true;
            try {
                terms = u->window(lo + 1, hi);
            } catch (const Error& e) {
                if (e.code() != "EvaluationTooLarge") throw;
                evaluated = false;
            }
            if (!evaluated) {
                detail::add_violation(report, eps, lo, lo, "unevaluable at this scale");
                continue;
            }
            // Triangle fast path: every pair gap is bounded by the window's
            // sum of absolute terms, so one exact comparison can settle all
            // pairs at once under the absolute-value norm.
            if (cert.norm.family() == Pseudonorm::Family::abs) {
                Element abs_total = S.zero();
                for (const auto& t : terms) abs_total = S.add(abs_total, S.abs(t));
                ++report.points_checked;
                if (H.compare(abs_total, eps) < 0) continue;
            }
            // Exact prefix sums over the window: gap(m, n) = prefix_n - prefix_m.
            std::vector<Element> prefix;
            prefix.reserve(terms.size() + 1);
            prefix.push_back(S.zero());
            for (const auto& t : terms) prefix.push_back(S.add(prefix.back(), t));
            for (BigInt m = lo; m <= hi; ++m) {
                for (BigInt n = m + 1; n <= hi; ++n) {
                    Element gap = S.sub(prefix[static_cast<std::size_t>(n - lo)],
                                        prefix[static_cast<std::size_t>(m - lo)]);
                    Element ng = cert.norm(gap);
                    ++report.points_checked;
                    if (H.compare(ng, eps) >= 0)
                        detail::add_violation(report, eps, n, m, render(ng));
                }
            }
            continue;
        }

        std::vector<Element> values = cert.seq->window(lo, hi);
        for (BigInt m = lo; m <= hi; ++m) {
            for (BigInt n = m + 1; n <= hi; ++n) {
                Element gap = cert.norm(S.sub(values[static_cast<std::size_t>(n - lo)],
                                              values[static_cast<std::size_t>(m - lo)]));
                ++report.points_checked;
                if (H.compare(gap, eps) >= 0)
                    detail::add_violation(report, eps, n, m, render(gap));
            }
        }
    }
    return report;
}

/// A bound s1 with ||x_n|| <= s1: the max of ||limit|| + eps0 over the tail
/// and of the finite prefix below modulus(eps0).
inline Element bound_from_certificate(const ConvergenceCertificate& cert, const Element& eps0) {
    const Structure& S = cert.seq->structure();
    const Structure& H = cert.norm.target();
    if (!H.is_positive(eps0))
        throw precondition_error("NonPositiveEpsilon", "bound needs eps0 > 0");
    BigInt n0 = eval_modulus(cert.modulus, H, eps0);
    if (n0 > 1'000'000)
        throw internal_error("EvaluationTooLarge", "bound prefix of length " + n0.str());
    Element s1 = H.add(cert.norm(cert.limit), eps0);
    for (BigInt n = cert.seq->start(); n < n0; ++n) {
        Element t = cert.norm(cert.seq->term(n));
        if (H.compare(t, s1) > 0) s1 = t;
    }
    if (!H.is_positive(s1)) s1 = H.one();
    return s1;
}

// --- certificate constructors ----------------------------------------------

/// Limit of a+b with the density-split modulus: given eps, pick beta+gamma <
/// eps and wait out both inputs.
inline ConvergenceCertificate sum_certificate(const ConvergenceCertificate& x,
                                              const ConvergenceCertificate& y) {
    const Structure& S = x.seq->structure();
    if (&S != &y.seq->structure())
        throw precondition_error("MixedStructures", "sum of certificates across structures");
    if (!S.caps.dense)
        throw precondition_error("NotDense", S.id + " has no density witness");
    ConvergenceCertificate out;
    out.seq = Sequence::sum(x.seq, y.seq);
    out.limit = S.add(x.limit, y.limit);
    out.modulus = Modulus::density_split(x.modulus, y.modulus);
    out.norm = x.norm;
    out.assumptions = x.assumptions;
    for (const auto& a : y.assumptions)
        if (!detail::has_assumption(out.assumptions, a.c_str())) out.assumptions.push_back(a);
    out.trusted_by_construction = x.trusted_by_construction && y.trusted_by_construction;
    return out;
}

/// Lemma-2.10 certificate: null times bounded is null, with modulus
/// N_x(eps_r) where M * eps_r < eps via the shrink witness.
inline ConvergenceCertificate bounded_times_null_certificate(
    const ConvergenceCertificate& null_cert, const SeqPtr& bounded_seq, const Element& bound_m,
    std::int64_t probe_window = kDefaultPrecheckWindow) {
    const Structure& S = null_cert.seq->structure();
    if (!S.is_zero(null_cert.limit))
        throw precondition_error("NotApplicable", "input certificate must have limit 0");
    if (!S.caps.dense || !S.caps.shrinkable)
        throw precondition_error("NotShrinkable", S.id + " is not dense and shrinkable");
    const Structure& H = null_cert.norm.target();
    if (!H.is_positive(bound_m))
        throw precondition_error("NonPositiveBound", "the bound M must be positive");
    BigInt lo = bounded_seq->start();
    std::vector<Element> window = bounded_seq->window(lo, lo + probe_window);
    for (std::size_t i = 0; i < window.size(); ++i) {
        if (H.compare(null_cert.norm(window[i]), bound_m) > 0)
            throw precondition_error("BoundViolatedOnProbe",
                                     "||y_n|| > M at n = " + BigInt(lo + i).str());
    }
    ConvergenceCertificate out;
    out.seq = Sequence::product(null_cert.seq, bounded_seq);
    out.limit = S.zero();
    out.modulus = Modulus::shrink_composed(null_cert.modulus, bound_m);
    out.norm = null_cert.norm;
    out.assumptions = null_cert.assumptions;
    out.trusted_by_construction = null_cert.trusted_by_construction;
    return out;
}

/// Product of limits along the proof of the product theorem: bound one
/// factor, split eps by density, shrink each share against the bound and
/// against ||b||.
inline ConvergenceCertificate product_certificate(const ConvergenceCertificate& x,
                                                  const ConvergenceCertificate& y) {
    const Structure& S = x.seq->structure();
    if (&S != &y.seq->structure())
        throw precondition_error("MixedStructures", "product of certificates across structures");
    if (!S.caps.dense || !S.caps.shrinkable)
        throw precondition_error("NotShrinkable", S.id + " is not dense and shrinkable");
    if (!S.caps.totally_ordered)
        throw precondition_error("NotApplicable", "product theorem needs a total order here");
    if (S.is_zero(y.limit)) {
        Element m = bound_from_certificate(x, x.norm.target().one());
        ConvergenceCertificate out =
            bounded_times_null_certificate(y, x.seq, m);
        return out;
    }
    Element s1 = bound_from_certificate(x, x.norm.target().one());
    ConvergenceCertificate out;
    out.seq = Sequence::product(x.seq, y.seq);
    out.limit = S.mul(x.limit, y.limit);
    out.modulus = Modulus::product_split(x.modulus, y.modulus, s1, y.norm(y.limit));
    out.norm = x.norm;
    out.assumptions = x.assumptions;
    for (const auto& a : y.assumptions)
        if (!detail::has_assumption(out.assumptions, a.c_str())) out.assumptions.push_back(a);
    out.trusted_by_construction = x.trusted_by_construction && y.trusted_by_construction;
    return out;
}

/// r^n -> 0. Archimedean structures take the Bernoulli-inequality modulus
/// (least N with N(x eps) > 1 for x = 1/|r| - 1); Z(X) takes the degree
/// modulus when |r| is infinitesimal. Anything else has no certificate.
inline ConvergenceCertificate power_null_certificate(const Element& r, const Structure& S) {
    ConvergenceCertificate out;
    out.seq = Sequence::geometric(S, r);
    out.limit = S.zero();
    out.norm = abs_norm(S);
    out.trusted_by_construction = true;
    if (S.is_zero(r)) {
        out.modulus = Modulus::constant(1);
        return out;
    }
    if (S.caps.archimedean.value_or(false)) {
        Element one = S.one();
        if (S.compare(S.abs(r), one) >= 0)
            throw precondition_error("NotApplicable",
                                     "(r^n) converges to 0 only for -1 < r < 1");
        out.modulus = Modulus::bernoulli(r);
        return out;
    }
    if (S.kind == Kind::zx) {
        const auto& rf = std::get<RationalFn>(r);
        if (rf.abs().magnitude_degree() >= 0)
            throw precondition_error(
                "NotApplicable",
                "(" + render(r) + ")^n does not converge to 0 in Z(X): |r| is not infinitesimal");
        out.modulus = Modulus::infinitesimal_power(r);
        return out;
    }
    throw precondition_error("NotApplicable",
                             "no power-null certificate construction for " + S.id);
}

/// Convergent implies Cauchy in dense structures; the modulus splits eps
/// into beta + gamma and waits for both tails.
inline CauchyCertificate cauchy_from_convergence(const ConvergenceCertificate& cert) {
    const Structure& S = cert.seq->structure();
    if (!S.caps.dense)
        throw precondition_error("NotDense", S.id + " has no density witness");
    CauchyCertificate out;
    out.seq = cert.seq;
    out.modulus = Modulus::density_split(cert.modulus, cert.modulus);
    out.norm = cert.norm;
    out.assumptions = cert.assumptions;
    out.trusted_by_construction = cert.trusted_by_construction;
    return out;
}

/// Default epsilon ladders: 10^-1..10^-6 for the rational carrier (nearest
/// p-powers below them for Z[1/p], where 10^-k itself is not representable),
/// 1/X..1/X^6 for Z(X).
inline std::vector<Element> default_eps_ladder(const Structure& S) {
    std::vector<Element> out;
    switch (S.kind) {
        case Kind::rational: {
            BigInt d = 10;
            for (int k = 1; k <= 6; ++k, d *= 10) out.push_back(Rational(BigInt(1), d));
            return out;
        }
        case Kind::z1p: {
            BigInt pk = 1;
            std::int64_t e = 0;
            BigInt target = 10;
            for (int k = 1; k <= 6; ++k, target *= 10) {
                while (pk < target) {
                    pk *= S.p;
                    ++e;
                }
                out.push_back(Z1p(S.p, 1, e));
            }
            return out;
        }
        case Kind::zx: {
            for (int k = 1; k <= 6; ++k)
                out.push_back(RationalFn(IntPoly(BigInt(1)),
                                         IntPoly::monomial(1, static_cast<std::size_t>(k))));
            return out;
        }
        case Kind::maxtimes: {
            BigInt d = 10;
            for (int k = 1; k <= 6; ++k, d *= 10)
                out.push_back(MaxTimes(Rational(BigInt(1), d)));
            return out;
        }
    }
    throw internal_error("BadKind", "unreachable");
}

} // namespace ordlim
