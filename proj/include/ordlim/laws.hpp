#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "ordlim/structure.hpp"
#include "ordlim/witness.hpp"

namespace ordlim {

struct LawFailure {
    std::vector<std::string> inputs;
    std::string expected;
    std::string observed;
};

struct LawCheck {
    std::string name;
    std::uint64_t samples_tested = 0;
    std::vector<LawFailure> failures;

    bool pass() const { return failures.empty(); }
};

/// Deterministic given (structure, seed, sample count).
struct LawReport {
    std::string structure;
    std::uint64_t seed = 0;
    std::vector<LawCheck> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass()) return false;
        return true;
    }
    std::uint64_t total_failures() const {
        std::uint64_t n = 0;
        for (const auto& c : checks) n += c.failures.size();
        return n;
    }
};

namespace detail {

inline void record(LawCheck& check, bool ok, std::initializer_list<const Element*> inputs,
                   const std::string& expected, const std::string& observed) {
    ++check.samples_tested;
    if (ok) return;
    LawFailure f;
    for (const Element* e : inputs) f.inputs.push_back(render(*e));
    f.expected = expected;
    f.observed = observed;
    if (check.failures.size() < 16) check.failures.push_back(std::move(f));
}

} // namespace detail

/// Checks the ordered-hemiring laws on seeded random tuples: associativity
/// and commutativity of +, identity and absorption of 0, associativity of *,
/// two-sided distributivity, <=-compatibility, and the strict variants where
/// the structure declares them.
inline LawReport check_hemiring_laws(const Structure& S, std::uint64_t sample_count,
                                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::array<Element, 3>> tuples;
    tuples.reserve(sample_count);
    for (std::uint64_t i = 0; i < sample_count; ++i)
        tuples.push_back({S.sample(rng), S.sample(rng), S.sample(rng)});

    LawReport report;
    report.structure = S.id;
    report.seed = seed;

    LawCheck add_assoc{"add-associative"};
    LawCheck add_comm{"add-commutative"};
    LawCheck add_ident{"add-identity"};
    LawCheck mul_assoc{"mul-associative"};
    LawCheck dist_l{"distributive-left"};
    LawCheck dist_r{"distributive-right"};
    LawCheck absorb{"zero-absorbing"};
    LawCheck ord_add{"order-add-compatible"};
    LawCheck ord_mul{"order-mul-compatible"};
    LawCheck strict_add{"strict-order-add-compatible"};
    LawCheck strict_mul{"strict-order-mul-monotone"};
    LawCheck mul_ident{"mul-identity"};
    LawCheck neg_law{"additive-inverse"};

    const Element zero = S.zero();
    for (const auto& [a, b, c] : tuples) {
        detail::record(add_assoc, S.equal(S.add(S.add(a, b), c), S.add(a, S.add(b, c))),
                       {&a, &b, &c}, "(a+b)+c = a+(b+c)", "mismatch");
        detail::record(add_comm, S.equal(S.add(a, b), S.add(b, a)), {&a, &b}, "a+b = b+a",
                       "mismatch");
        detail::record(add_ident, S.equal(S.add(a, zero), a), {&a}, "a+0 = a", "mismatch");
        detail::record(mul_assoc, S.equal(S.mul(S.mul(a, b), c), S.mul(a, S.mul(b, c))),
                       {&a, &b, &c}, "(ab)c = a(bc)", "mismatch");
        detail::record(dist_l, S.equal(S.mul(a, S.add(b, c)), S.add(S.mul(a, b), S.mul(a, c))),
                       {&a, &b, &c}, "a(b+c) = ab+ac", "mismatch");
        detail::record(dist_r, S.equal(S.mul(S.add(b, c), a), S.add(S.mul(b, a), S.mul(c, a))),
                       {&a, &b, &c}, "(b+c)a = ba+ca", "mismatch");
        detail::record(absorb,
                       S.equal(S.mul(zero, a), zero) && S.equal(S.mul(a, zero), zero), {&a},
                       "0a = a0 = 0", "mismatch");

        // a <= b => a+c <= b+c, using the sampled pair in sorted order.
        const Element& lo = S.compare(a, b) <= 0 ? a : b;
        const Element& hi = S.compare(a, b) <= 0 ? b : a;
        detail::record(ord_add, S.compare(S.add(lo, c), S.add(hi, c)) <= 0, {&lo, &hi, &c},
                       "a <= b => a+c <= b+c", "violated");
        // a <= b and 0 <= c => ac <= bc and ca <= cb.
        Element cpos = S.caps.has_neg ? S.abs(c) : c;
        bool ok = S.compare(S.mul(lo, cpos), S.mul(hi, cpos)) <= 0 &&
                  S.compare(S.mul(cpos, lo), S.mul(cpos, hi)) <= 0;
        detail::record(ord_mul, ok, {&lo, &hi, &cpos}, "a <= b, 0 <= c => ac <= bc, ca <= cb",
                       "violated");

        if (S.caps.strict_order_compatible && S.compare(lo, hi) < 0) {
            detail::record(strict_add, S.compare(S.add(lo, c), S.add(hi, c)) < 0,
                           {&lo, &hi, &c}, "a < b => a+c < b+c", "violated");
            if (S.is_positive(cpos)) {
                bool mono = S.compare(S.mul(lo, cpos), S.mul(hi, cpos)) < 0 &&
                            S.compare(S.mul(cpos, lo), S.mul(cpos, hi)) < 0;
                detail::record(strict_mul, mono, {&lo, &hi, &cpos},
                               "a < b, 0 < c => ac < bc, ca < cb", "violated");
            }
        }
        if (S.caps.has_one) {
            const Element one = S.one();
            detail::record(mul_ident, S.equal(S.mul(one, a), a) && S.equal(S.mul(a, one), a),
                           {&a}, "1a = a1 = a", "mismatch");
        }
        if (S.caps.has_neg && !S.nonneg_only)
            detail::record(neg_law, S.equal(S.add(a, S.neg(a)), zero), {&a}, "a + (-a) = 0",
                           "mismatch");
    }

    for (auto* check : {&add_assoc, &add_comm, &add_ident, &mul_assoc, &dist_l, &dist_r, &absorb,
                        &ord_add, &ord_mul, &strict_add, &strict_mul, &mul_ident, &neg_law})
        if (check->samples_tested > 0) report.checks.push_back(std::move(*check));
    return report;
}

/// Confirms no sampled nonzero pair multiplies to zero. Requires a total
/// order with strict compatibility (which forces entirety).
inline LawReport check_entire(const Structure& S, std::uint64_t sample_count,
                              std::uint64_t seed) {
    if (!S.caps.totally_ordered || !S.caps.strict_order_compatible)
        throw precondition_error("NotApplicable",
                                 S.id + " lacks a strictly compatible total order");
    std::mt19937_64 rng(seed);
    LawReport report;
    report.structure = S.id;
    report.seed = seed;
    LawCheck check{"entire"};
    for (std::uint64_t i = 0; i < sample_count; ++i) {
        Element a = S.sample(rng);
        Element b = S.sample(rng);
        while (S.is_zero(a)) a = S.sample(rng);
        while (S.is_zero(b)) b = S.sample(rng);
        detail::record(check, !S.is_zero(S.mul(a, b)), {&a, &b}, "ab != 0", "ab = 0");
    }
    report.checks.push_back(std::move(check));
    return report;
}

/// Samples positive epsilons and verifies beta, gamma > 0 with beta+gamma < eps.
inline LawReport check_density_witness(const Structure& S, std::uint64_t sample_count,
                                       std::uint64_t seed) {
    DensityWitness w = density_witness_for(S);
    std::mt19937_64 rng(seed);
    LawReport report;
    report.structure = S.id;
    report.seed = seed;
    LawCheck check{"density-witness"};
    for (std::uint64_t i = 0; i < sample_count; ++i) {
        Element eps = S.sample(rng);
        while (!S.is_positive(eps)) eps = S.sample(rng);
        auto [beta, gamma] = w.produce(eps);
        bool ok = S.is_positive(beta) && S.is_positive(gamma) &&
                  S.compare(S.add(beta, gamma), eps) < 0;
        detail::record(check, ok, {&eps, &beta, &gamma}, "beta,gamma > 0 and beta+gamma < eps",
                       "violated");
    }
    report.checks.push_back(std::move(check));
    return report;
}

/// Samples positive (alpha, M) pairs and verifies both strict inequalities.
inline LawReport check_shrink_witness(const Structure& S, std::uint64_t sample_count,
                                      std::uint64_t seed) {
    ShrinkWitness w = shrink_witness_for(S);
    std::mt19937_64 rng(seed);
    LawReport report;
    report.structure = S.id;
    report.seed = seed;
    LawCheck check{"shrink-witness"};
    for (std::uint64_t i = 0; i < sample_count; ++i) {
        Element alpha = S.sample(rng);
        while (!S.is_positive(alpha)) alpha = S.sample(rng);
        Element m = S.sample(rng);
        while (!S.is_positive(m)) m = S.sample(rng);
        auto [al, ar] = w.produce(alpha, m);
        bool ok = S.is_positive(al) && S.is_positive(ar) &&
                  S.compare(S.mul(m, ar), alpha) < 0 && S.compare(S.mul(al, m), alpha) < 0;
        detail::record(check, ok, {&alpha, &m, &al, &ar},
                       "alpha_l, alpha_r > 0 and M*alpha_r < alpha, alpha_l*M < alpha",
                       "violated");
    }
    report.checks.push_back(std::move(check));
    return report;
}

} // namespace ordlim
