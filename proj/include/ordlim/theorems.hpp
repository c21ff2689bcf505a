#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ordlim/certificate.hpp"
#include "ordlim/tuple_sequence.hpp"

namespace ordlim {

// --- geometric series --------------------------------------------------------

struct GeometricResult {
    Element r;
    Element sum; // (1 - r)^-1
    Element one_minus_r_inverse;
    ConvergenceCertificate power_null_cert; // r^n -> 0
    ConvergenceCertificate certificate;     // partial sums -> sum
};

/// Sum of the geometric series in a dense, shrinkable, totally ordered
/// commutative ring with 1. The partial-sum gap is ||r^(n+1)|| ||(1-r)^-1||,
/// so the modulus shrinks eps against ||(1-r)^-1|| and defers to the
/// power-null index.
inline GeometricResult geometric_sum(const Element& r, const Structure& S) {
    if (!S.caps.has_one || !S.caps.has_neg || !S.caps.totally_ordered)
        throw precondition_error("NotApplicable",
                                 "geometric series needs a totally ordered ring with 1");
    if (!S.caps.dense || !S.caps.shrinkable)
        throw precondition_error("NotApplicable", S.id + " must be dense and shrinkable");
    if (S.equal(r, S.one()))
        throw precondition_error("ROne", "r = 1 has no geometric sum");

    Element one_minus_r = S.sub(S.one(), r);
    Element inv;
    try {
        inv = S.invert(one_minus_r);
    } catch (const Error&) {
        throw precondition_error("NotInvertible",
                                 "1 - r = " + render(one_minus_r) + " is not a unit of " + S.id);
    }
    ConvergenceCertificate null_cert;
    try {
        null_cert = power_null_certificate(r, S);
    } catch (const Error& e) {
        throw precondition_error("NoNullCertificate", e.what());
    }

    GeometricResult result;
    result.r = r;
    result.sum = inv;
    result.one_minus_r_inverse = inv;
    result.power_null_cert = null_cert;

    ConvergenceCertificate cert;
    cert.seq = Sequence::partial_sums(Sequence::geometric(S, r));
    cert.limit = inv;
    cert.norm = abs_norm(S);
    cert.modulus = Modulus::shrink_composed(null_cert.modulus, cert.norm(inv));
    cert.trusted_by_construction = true;
    result.certificate = std::move(cert);
    return result;
}

/// (1-r) * s_n = 1 - r^(n+1), exactly, for all n up to n_max.
inline bool geometric_identity_holds(const Element& r, const Structure& S, std::int64_t n_max) {
    Element one_minus_r = S.sub(S.one(), r);
    SeqPtr sums = Sequence::partial_sums(Sequence::geometric(S, r));
    for (BigInt n = 0; n <= n_max; ++n) {
        Element lhs = S.mul(one_minus_r, sums->term(n));
        Element rhs = S.sub(S.one(), S.pow(r, n + 1));
        if (!S.equal(lhs, rhs)) return false;
    }
    return true;
}

// --- Cauchy condensation -----------------------------------------------------

/// The condensed series terms i -> 2^i * x(2^i), indexed from 0.
inline SeqPtr condense(const SeqPtr& series_terms) { return Sequence::condensed(series_terms); }

namespace detail {

inline void probe_positive_decreasing(const SeqPtr& u, std::int64_t window, bool strict) {
    const Structure& S = u->structure();
    BigInt lo = u->start();
    std::vector<Element> terms = u->window(lo, lo + window);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!S.is_positive(terms[i]))
            throw precondition_error("NotPositiveOnProbe",
                                     "term at n = " + BigInt(lo + i).str() + " is not positive");
        if (i + 1 < terms.size()) {
            int c = S.compare(terms[i + 1], terms[i]);
            if (strict ? c >= 0 : c > 0)
                throw precondition_error(strict ? "NotStrictlyDecreasingOnProbe"
                                                : "NotDecreasingOnProbe",
                                         "terms fail to decrease at n = " + BigInt(lo + i).str());
        }
    }
}

inline SeqPtr series_terms_of(const CauchyCertificate& cert) {
    if (cert.seq->ctor() != Sequence::Ctor::partial_sums)
        throw precondition_error("NotApplicable",
                                 "certificate must cover a series (partial sums)");
    return cert.seq->inner();
}

} // namespace detail

/// Forward direction of the condensation test: from a Cauchy certificate for
/// sum x_i (positive decreasing terms) to one for sum 2^i x_(2^i). Given
/// eps, density yields beta + gamma < eps, N1 = max(N_x(beta), N_x(gamma)),
/// and the condensed index is the least k with 2^(k-1) + 1 >= N1.
inline CauchyCertificate condensation_forward(const CauchyCertificate& cert,
                                              std::int64_t monotonicity_probe_depth =
                                                  kDefaultPrecheckWindow) {
    const Structure& S = cert.seq->structure();
    if (!S.caps.dense || !S.caps.totally_ordered)
        throw precondition_error("NotApplicable", "condensation needs a dense total order");
    SeqPtr u = detail::series_terms_of(cert);
    detail::probe_positive_decreasing(u, monotonicity_probe_depth, /*strict=*/false);

    CauchyCertificate out;
    out.seq = Sequence::partial_sums(Sequence::condensed(u));
    out.modulus = Modulus::log2_shift(Modulus::density_split(cert.modulus, cert.modulus));
    out.norm = cert.norm;
    out.assumptions = cert.assumptions;
    if (!detail::has_assumption(out.assumptions, kAssumePositiveDecreasing))
        out.assumptions.push_back(kAssumePositiveDecreasing);
    out.trusted_by_construction = cert.trusted_by_construction;
    return out;
}

/// Backward direction: from a Cauchy certificate for the condensed series to
/// one for the original, with modulus 2^(N_c(eps)).
inline CauchyCertificate condensation_backward(const CauchyCertificate& condensed_cert,
                                               std::int64_t monotonicity_probe_depth =
                                                   kDefaultPrecheckWindow) {
    const Structure& S = condensed_cert.seq->structure();
    if (!S.caps.dense || !S.caps.totally_ordered)
        throw precondition_error("NotApplicable", "condensation needs a dense total order");
    SeqPtr condensed = detail::series_terms_of(condensed_cert);
    if (condensed->ctor() != Sequence::Ctor::condensed)
        throw precondition_error("NotApplicable",
                                 "certificate must cover a condensed series");
    SeqPtr u = condensed->inner();
    detail::probe_positive_decreasing(u, monotonicity_probe_depth, /*strict=*/false);

    CauchyCertificate out;
    out.seq = Sequence::partial_sums(u);
    out.modulus = Modulus::exp_shift(condensed_cert.modulus);
    out.norm = condensed_cert.norm;
    out.assumptions = condensed_cert.assumptions;
    if (!detail::has_assumption(out.assumptions, kAssumePositiveDecreasing))
        out.assumptions.push_back(kAssumePositiveDecreasing);
    out.trusted_by_construction = condensed_cert.trusted_by_construction;
    return out;
}

/// Exact recheck of condensation inequality (1):
/// 2^n x_(2^n) <= 2 * sum_{i=2^(n-1)+1}^{2^n} x_i for decreasing positive terms.
inline bool condensation_inequality_1(const SeqPtr& u, int n_max) {
    const Structure& S = u->structure();
    for (int n = 1; n <= n_max; ++n) {
        BigInt two_n = BigInt(1) << static_cast<unsigned>(n);
        BigInt from = (BigInt(1) << static_cast<unsigned>(n - 1)) + 1;
        Element lhs = S.mul_by_count(two_n, u->term(two_n));
        Element sum = S.zero();
        for (const auto& t : u->window(from, two_n)) sum = S.add(sum, t);
        if (S.compare(lhs, S.mul_by_count(2, sum)) > 0) return false;
    }
    return true;
}

/// Exact recheck of condensation inequality (4):
/// sum_{i=2^n}^{2^(n+1)-1} x_i <= 2^n x_(2^n).
inline bool condensation_inequality_4(const SeqPtr& u, int n_max) {
    const Structure& S = u->structure();
    for (int n = 0; n <= n_max; ++n) {
        BigInt two_n = BigInt(1) << static_cast<unsigned>(n);
        BigInt to = (BigInt(1) << static_cast<unsigned>(n + 1)) - 1;
        Element sum = S.zero();
        for (const auto& t : u->window(two_n, to)) sum = S.add(sum, t);
        if (S.compare(sum, S.mul_by_count(two_n, u->term(two_n))) > 0) return false;
    }
    return true;
}

// --- series squeeze ----------------------------------------------------------

/// From Cauchy certificates for sum x_n and sum z_n and the exact sandwich
/// x_n <= y_n <= z_n (from N1 onward), a Cauchy certificate for sum y_n with
/// modulus max(N1, N_x(eps), N_z(eps)).
inline CauchyCertificate squeeze_series(const CauchyCertificate& cert_x,
                                        const CauchyCertificate& cert_z, const SeqPtr& y,
                                        const BigInt& n1,
                                        std::int64_t probe_window = kDefaultPrecheckWindow) {
    const Structure& S = y->structure();
    if (!S.caps.dense || !S.caps.totally_ordered)
        throw precondition_error("NotApplicable", "squeeze needs a dense total order");
    SeqPtr x = detail::series_terms_of(cert_x);
    SeqPtr z = detail::series_terms_of(cert_z);
    BigInt lo = std::max(n1, std::max(y->start(), std::max(x->start(), z->start())));
    std::vector<Element> xs = x->window(lo, lo + probe_window);
    std::vector<Element> ys = y->window(lo, lo + probe_window);
    std::vector<Element> zs = z->window(lo, lo + probe_window);
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (S.compare(xs[i], ys[i]) > 0 || S.compare(ys[i], zs[i]) > 0)
            throw precondition_error("SandwichViolatedOnProbe",
                                     "x <= y <= z fails at n = " + BigInt(lo + i).str());
    }
    CauchyCertificate out;
    out.seq = Sequence::partial_sums(y);
    out.modulus = Modulus::max_of(Modulus::constant(n1),
                                  Modulus::max_of(cert_x.modulus, cert_z.modulus));
    out.norm = cert_x.norm;
    out.trusted_by_construction =
        cert_x.trusted_by_construction && cert_z.trusted_by_construction;
    return out;
}

// --- alternating series ------------------------------------------------------

/// For strictly decreasing positive x_n -> 0, the alternating partial sums
/// s_n = sum (-1)^(i+1) x_i are Cauchy with |s_n - s_m| <= x_(m+1); modulus
/// N_x(eps) + 1.
inline CauchyCertificate alternating_cauchy(const SeqPtr& x,
                                            const ConvergenceCertificate& null_cert,
                                            std::int64_t probe_window = kDefaultPrecheckWindow) {
    const Structure& S = x->structure();
    if (!S.caps.has_neg)
        throw precondition_error("NotApplicable", "alternating signs need negation");
    if (!S.is_zero(null_cert.limit))
        throw precondition_error("NotApplicable", "the x certificate must have limit 0");
    detail::probe_positive_decreasing(x, probe_window, /*strict=*/true);

    SeqPtr signs = Sequence::from_expression(S, "(-1)^(n+1)");
    CauchyCertificate out;
    out.seq = Sequence::partial_sums(Sequence::product(signs, x));
    out.modulus = Modulus::offset(null_cert.modulus, 1);
    out.norm = null_cert.norm;
    out.trusted_by_construction = null_cert.trusted_by_construction;
    return out;
}

/// Exact recheck of the alternating bound |s_n - s_m| <= x_(m+1) for
/// m < n <= n_max.
inline bool alternating_bound_holds(const SeqPtr& x, std::int64_t n_max) {
    const Structure& S = x->structure();
    SeqPtr signs = Sequence::from_expression(S, "(-1)^(n+1)");
    SeqPtr sums = Sequence::partial_sums(Sequence::product(signs, x));
    std::vector<Element> s = sums->window(sums->start(), BigInt(n_max));
    for (std::size_t m = 0; m + 1 < s.size(); ++m) {
        Element bound = x->term(BigInt(static_cast<std::int64_t>(m)) + sums->start() + 1);
        for (std::size_t n = m + 1; n < s.size(); ++n) {
            if (S.compare(S.abs(S.sub(s[n], s[m])), bound) > 0) return false;
        }
    }
    return true;
}

// --- absolute convergence ----------------------------------------------------

/// Reuses the Cauchy modulus of sum ||x_i|| for sum x_i itself:
/// ||x_(m+1) + ... + x_n|| <= ||x_(m+1)|| + ... + ||x_n|| < eps.
inline CauchyCertificate absolute_to_plain(const CauchyCertificate& abs_cert, const SeqPtr& x,
                                           const Pseudonorm& norm,
                                           std::int64_t probe_window = kDefaultProbeDepth) {
    const Structure& S = x->structure();
    SeqPtr norm_terms = detail::series_terms_of(abs_cert);
    BigInt lo = std::max(x->start(), norm_terms->start());
    std::vector<Element> xs = x->window(lo, lo + probe_window);
    std::vector<Element> ns = norm_terms->window(lo, lo + probe_window);
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (!abs_cert.norm.target().equal(norm(xs[i]), ns[i]))
            throw precondition_error("NotApplicable",
                                     "input series is not the norm series of x at n = " +
                                         BigInt(lo + i).str());
    CauchyCertificate out;
    out.seq = Sequence::partial_sums(x);
    out.modulus = abs_cert.modulus;
    out.norm = norm;
    out.trusted_by_construction = abs_cert.trusted_by_construction;
    return out;
}

/// Tuple-group variant over Q^k with the sum-of-absolute-values norm.
struct TupleCauchyCertificate {
    TupleSequence xs;
    ModulusPtr modulus;
    std::vector<std::string> assumptions;
    bool trusted_by_construction = false;
};

inline TupleCauchyCertificate absolute_to_plain_tuple(const CauchyCertificate& abs_cert,
                                                      const TupleSequence& xs,
                                                      std::int64_t probe_window =
                                                          kDefaultProbeDepth) {
    const Structure& S = xs.structure();
    SeqPtr norm_terms = detail::series_terms_of(abs_cert);
    BigInt lo = std::max(xs.start(), norm_terms->start());
    for (BigInt n = lo; n <= lo + probe_window; ++n)
        if (!S.equal(tuple_norm(S, xs.term(n)), norm_terms->term(n)))
            throw precondition_error("NotApplicable",
                                     "input series is not the norm series of x at n = " +
                                         n.str());
    TupleCauchyCertificate out;
    out.xs = xs;
    out.modulus = abs_cert.modulus;
    out.trusted_by_construction = abs_cert.trusted_by_construction;
    return out;
}

// --- ratio test ----------------------------------------------------------------

struct RatioResult {
    ModulusPtr modulus;                // Cauchy modulus for sum x_n in the group
    CauchyCertificate norm_series_cert; // Cauchy certificate for sum ||x_n||
    Element tail_constant;             // ||x_0|| * ||(1-r)^-1||
};

/// Thm-4.7 ratio test: ||x_(n+1)|| <= r ||x_n|| pins ||x_n|| <= r^n ||x_0||,
/// so the series tail is bounded by ||x_0|| r^(m+1) (1-r)^-1. The modulus
/// shrinks eps against that constant and defers to the power-null index.
inline RatioResult ratio_test(const Element& x0_norm, const Element& r,
                              const ConvergenceCertificate& power_null_cert,
                              const Element& one_minus_r_inverse, const SeqPtr& norm_probe,
                              std::int64_t probe_window = kDefaultPrecheckWindow) {
    const Structure& S = norm_probe->structure();
    if (S.compare(r, S.zero()) < 0)
        throw precondition_error("NotApplicable", "ratio bound needs r >= 0");
    BigInt lo = norm_probe->start();
    std::vector<Element> ns = norm_probe->window(lo, lo + probe_window);
    if (S.compare(ns.front(), x0_norm) > 0)
        throw precondition_error("RatioViolatedOnProbe", "||x_0|| exceeds the declared bound");
    for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
        if (S.compare(ns[i + 1], S.mul(r, ns[i])) > 0)
            throw precondition_error("RatioViolatedOnProbe",
                                     "||x_(n+1)|| > r ||x_n|| at n = " + BigInt(lo + i).str());
    }
    RatioResult out;
    Element c = S.mul(S.abs(x0_norm), S.abs(one_minus_r_inverse));
    out.tail_constant = c;
    out.modulus = S.is_zero(c) ? Modulus::constant(1)
                               : Modulus::shrink_composed(power_null_cert.modulus, c);

    CauchyCertificate norm_cert;
    norm_cert.seq = Sequence::partial_sums(norm_probe);
    norm_cert.modulus = out.modulus;
    norm_cert.norm = abs_norm(S);
    norm_cert.trusted_by_construction = true;
    out.norm_series_cert = std::move(norm_cert);
    return out;
}

/// Exact tail identity (1-r) sum_{k=m+1}^{n} r^k = r^(m+1) - r^(n+1) for all
/// m < n <= n_max.
inline bool ratio_tail_identity_holds(const Element& r, const Structure& S, std::int64_t n_max) {
    Element one_minus_r = S.sub(S.one(), r);
    std::vector<Element> powers;
    for (BigInt k = 0; k <= n_max + 1; ++k) powers.push_back(S.pow(r, k));
    for (std::int64_t m = 0; m < n_max; ++m) {
        Element tail = S.zero();
        for (std::int64_t k = m + 1; k <= n_max; ++k) {
            tail = S.add(tail, powers[static_cast<std::size_t>(k)]);
            Element lhs = S.mul(one_minus_r, tail);
            Element rhs = S.sub(powers[static_cast<std::size_t>(m + 1)],
                                powers[static_cast<std::size_t>(k + 1)]);
            if (!S.equal(lhs, rhs)) return false;
        }
    }
    return true;
}

// --- Bernoulli inequality ------------------------------------------------------

enum class BernoulliMode { semiring_nonneg, ring_all_nonneg, ring_all_nonpos, single_power };

struct BernoulliResult {
    bool preconditions_ok = true;
    std::string precondition_detail;
    Element lhs, rhs;
    bool holds = false;
};

/// Exact two-sided evaluation of prod (1 + x_i) >= 1 + sum x_i under the
/// mode's sign conditions, or (1+x)^n >= 1 + n x for single_power.
inline BernoulliResult bernoulli_check(const Structure& S, const std::vector<Element>& xs,
                                       BernoulliMode mode, const BigInt& power_n = 1) {
    BernoulliResult result;
    result.lhs = S.one();
    result.rhs = S.one();
    const Element zero = S.zero();
    const Element one = S.one();

    auto fail_pre = [&](const std::string& why) {
        result.preconditions_ok = false;
        result.precondition_detail = why;
        return result;
    };

    if (xs.empty()) return fail_pre("no elements given");
    if ((mode == BernoulliMode::ring_all_nonneg || mode == BernoulliMode::ring_all_nonpos) &&
        !S.caps.has_neg)
        return fail_pre("ring modes need a ring");
    if (mode == BernoulliMode::single_power && xs.size() != 1)
        return fail_pre("single_power takes exactly one element");

    for (const Element& x : xs) {
        if (mode == BernoulliMode::ring_all_nonpos) {
            if (S.compare(x, zero) > 0) return fail_pre(render(x) + " is positive");
        } else {
            if (S.compare(x, zero) < 0) return fail_pre(render(x) + " is negative");
        }
        Element one_plus = S.add(one, x);
        if (S.compare(one_plus, zero) < 0) return fail_pre("1 + " + render(x) + " < 0");
    }

    if (mode == BernoulliMode::single_power) {
        if (power_n < 0) return fail_pre("power must be a natural number");
        const Element& x = xs.front();
        result.lhs = S.pow(S.add(one, x), power_n);
        result.rhs = S.add(one, S.mul_by_count(power_n, x));
    } else {
        Element prod = one;
        Element sum = zero;
        for (const Element& x : xs) {
            prod = S.mul(prod, S.add(one, x));
            sum = S.add(sum, x);
        }
        result.lhs = prod;
        result.rhs = S.add(one, sum);
    }
    result.holds = S.compare(result.lhs, result.rhs) >= 0;
    return result;
}

/// Sampled Bernoulli harness: draws tuples satisfying the mode's
/// preconditions and reports any inequality failures.
inline LawReport bernoulli_sampled(const Structure& S, BernoulliMode mode,
                                   std::uint64_t sample_count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    LawReport report;
    report.structure = S.id;
    report.seed = seed;
    LawCheck check{"bernoulli-inequality"};
    const Element zero = S.zero();
    const Element minus_one = S.caps.has_neg ? S.neg(S.one()) : S.zero();
    for (std::uint64_t t = 0; t < sample_count; ++t) {
        std::size_t k = static_cast<std::size_t>(draw_int(rng, 1, 5));
        std::vector<Element> xs;
        while (xs.size() < k) {
            Element x = S.sample(rng);
            if (mode == BernoulliMode::ring_all_nonpos) {
                if (S.compare(x, zero) > 0) x = S.neg(x);
                if (S.compare(x, minus_one) < 0) continue; // keep 1 + x >= 0
            } else if (S.caps.has_neg && S.compare(x, zero) < 0) {
                x = S.neg(x);
            }
            xs.push_back(std::move(x));
        }
        BigInt n = (mode == BernoulliMode::single_power) ? BigInt(draw_int(rng, 0, 64)) : BigInt(1);
        if (mode == BernoulliMode::single_power) xs.resize(1);
        BernoulliResult r = bernoulli_check(S, xs, mode, n);
        if (!r.preconditions_ok) continue;
        ++check.samples_tested;
        if (!r.holds) {
            LawFailure f;
            for (const auto& x : xs) f.inputs.push_back(render(x));
            f.expected = "prod(1+x_i) >= 1 + sum(x_i)";
            f.observed = render(r.lhs) + " < " + render(r.rhs);
            check.failures.push_back(std::move(f));
        }
    }
    report.checks.push_back(std::move(check));
    return report;
}

// --- Conv(R) homomorphism probe ------------------------------------------------

/// Probes the limit map Conv(R) -> R on certificate pairs: limits of
/// constructed sum/product certificates must equal the exact sums/products,
/// constructed certificates must validate, and limit-0 inputs must absorb
/// bounded partners into the kernel.
inline LawReport conv_hom_probe(
    const std::vector<std::pair<ConvergenceCertificate, ConvergenceCertificate>>& pairs,
    const std::vector<Element>& eps_samples, std::int64_t probe_depth = kDefaultProbeDepth) {
    LawReport report;
    report.structure = pairs.empty() ? "" : pairs.front().first.seq->structure().id;
    LawCheck inputs_valid{"inputs-validate"};
    LawCheck sum_hom{"limit-of-sum-is-sum-of-limits"};
    LawCheck product_hom{"limit-of-product-is-product-of-limits"};
    LawCheck outputs_valid{"constructed-certificates-validate"};
    LawCheck kernel{"kernel-absorbs-bounded"};

    for (const auto& [cx, cy] : pairs) {
        const Structure& S = cx.seq->structure();
        for (const auto* c : {&cx, &cy}) {
            ValidationReport v = validate_convergence(*c, eps_samples, probe_depth);
            ++inputs_valid.samples_tested;
            if (!v.pass) {
                inputs_valid.failures.push_back(
                    LawFailure{{render(c->limit)}, "input certificate validates", "violations"});
                throw precondition_error("InvalidInputCertificate",
                                         "a probe input certificate fails validation");
            }
        }
        ConvergenceCertificate sum_cert = sum_certificate(cx, cy);
        ConvergenceCertificate prod_cert = product_certificate(cx, cy);
        ++sum_hom.samples_tested;
        if (!S.equal(sum_cert.limit, S.add(cx.limit, cy.limit)))
            sum_hom.failures.push_back(LawFailure{
                {render(cx.limit), render(cy.limit)}, "lim(x+y) = lim x + lim y", "mismatch"});
        ++product_hom.samples_tested;
        if (!S.equal(prod_cert.limit, S.mul(cx.limit, cy.limit)))
            product_hom.failures.push_back(LawFailure{
                {render(cx.limit), render(cy.limit)}, "lim(xy) = lim x * lim y", "mismatch"});
        for (const auto* c : {&sum_cert, &prod_cert}) {
            ValidationReport v = validate_convergence(*c, eps_samples, probe_depth);
            ++outputs_valid.samples_tested;
            if (!v.pass)
                outputs_valid.failures.push_back(LawFailure{
                    {render(c->limit)}, "constructed certificate validates", "violations"});
        }
        // Kernel absorption: when either factor has limit 0, the product
        // certificate must land in Zero(R).
        if (S.is_zero(cx.limit) || S.is_zero(cy.limit)) {
            ++kernel.samples_tested;
            if (!S.is_zero(prod_cert.limit))
                kernel.failures.push_back(
                    LawFailure{{render(cx.limit), render(cy.limit)},
                               "limit-0 factor absorbs the product into Zero(R)", "mismatch"});
        }
    }
    for (auto* check : {&inputs_valid, &sum_hom, &product_hom, &outputs_valid, &kernel})
        report.checks.push_back(std::move(*check));
    return report;
}

// --- geometric-shape detection (series without explicit certificates) ----------

struct GeometricShape {
    Element first; // value at the start index
    Element ratio;
};

/// Detects x_(n+1) = r * x_n exactly on a probe window. The shape is then
/// assumed globally (recorded as an assumption) by the consumers that build
/// input certificates for the CLI.
inline std::optional<GeometricShape> detect_geometric(const SeqPtr& seq,
                                                      std::int64_t probe_window =
                                                          kDefaultProbeDepth) {
    const Structure& S = seq->structure();
    BigInt lo = seq->start();
    std::vector<Element> v = seq->window(lo, lo + probe_window);
    if (S.is_zero(v.front())) return std::nullopt;
    Element ratio;
    try {
        ratio = S.mul(v[1], S.invert(v[0]));
    } catch (const Error&) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (!S.equal(v[i + 1], S.mul(ratio, v[i]))) return std::nullopt;
    return GeometricShape{v.front(), ratio};
}

/// Builds a Cauchy certificate for sum x_n where x has verified geometric
/// shape with |ratio| admitting a power-null certificate. The series tail
/// from m is bounded by ||x_(m+1)|| (1-|r|)^-1 <= |first| |r|^(m+1-start)
/// (1-|r|)^-1.
inline CauchyCertificate geometric_shape_cauchy(const SeqPtr& seq,
                                                std::int64_t probe_window =
                                                    kDefaultProbeDepth) {
    const Structure& S = seq->structure();
    auto shape = detect_geometric(seq, probe_window);
    if (!shape)
        throw precondition_error("NotApplicable",
                                 "series terms are not geometric on the probe window");
    Element ra = S.abs(shape->ratio);
    ConvergenceCertificate null_cert = power_null_certificate(ra, S);
    Element one_minus = S.sub(S.one(), ra);
    Element c = S.mul(S.abs(shape->first), S.abs(S.invert(one_minus)));
    CauchyCertificate out;
    out.seq = Sequence::partial_sums(seq);
    // Tail from m is below c * |r|^(m+1-start); the offset realigns the
    // power-null index to the series start.
    std::int64_t start_offset = static_cast<std::int64_t>(seq->start()) - 1;
    out.modulus = Modulus::offset(Modulus::shrink_composed(null_cert.modulus, c), start_offset);
    out.norm = abs_norm(S);
    out.assumptions.push_back(kAssumeGeometricOnProbe);
    if (S.is_positive(shape->first) && S.is_positive(shape->ratio) &&
        S.compare(shape->ratio, S.one()) < 0)
        out.assumptions.push_back(kAssumePositiveDecreasing);
    out.trusted_by_construction = false;
    return out;
}

} // namespace ordlim
