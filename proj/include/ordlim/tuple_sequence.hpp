#pragma once

#include <vector>

#include "ordlim/certificate.hpp"

namespace ordlim {

/// A sequence of k-tuples over one scalar structure, normed by the sum of
/// componentwise absolute values. This is the concrete Cauchy-complete-style
/// normed group the ratio test and absolute-convergence transformer ship with.
struct TupleSequence {
    std::vector<SeqPtr> comps;

    const Structure& structure() const { return comps.front()->structure(); }

    BigInt start() const {
        BigInt s = comps.front()->start();
        for (const auto& c : comps) s = std::max(s, c->start());
        return s;
    }

    std::vector<Element> term(const BigInt& n) const {
        std::vector<Element> v;
        v.reserve(comps.size());
        for (const auto& c : comps) v.push_back(c->term(n));
        return v;
    }
};

inline Element tuple_norm(const Structure& S, const std::vector<Element>& v) {
    Element s = S.zero();
    for (const auto& x : v) s = S.add(s, S.abs(x));
    return s;
}

/// Cauchy validation for the series sum x_n of a tuple sequence: for each
/// eps and all pairs m < n in the window, || sum_(m,n] x_i || < eps under
/// the sum-of-absolute-values norm.
inline ValidationReport validate_tuple_series_cauchy(const TupleSequence& xs,
                                                     const ModulusPtr& modulus,
                                                     const std::vector<Element>& eps_samples,
                                                     std::int64_t probe_depth = kDefaultProbeDepth) {
    const Structure& S = xs.structure();
    ValidationReport report;
    for (const Element& eps : eps_samples) {
        ++report.eps_checked;
        BigInt n0 = eval_modulus(modulus, S, eps);
        BigInt lo = std::max(n0, xs.start());
        BigInt hi = lo + probe_depth;
        // Triangle fast path: || sum_(m,n] x_i || <= sum_c sum_i |x_i^(c)|
        // over the whole window, so one comparison can settle every pair.
        // Accumulating within each component first keeps denominators in one
        // aligned family per running sum.
        std::vector<std::vector<Element>> windows;
        Element abs_total = S.zero();
        for (const auto& comp : xs.comps) {
            std::vector<Element> terms = comp->window(lo + 1, hi);
            Element comp_total = S.zero();
            for (const auto& t : terms) comp_total = S.add(comp_total, S.abs(t));
            abs_total = S.add(abs_total, comp_total);
            windows.push_back(std::move(terms));
        }
        ++report.points_checked;
        if (S.compare(abs_total, eps) < 0) continue;
        // Per-component prefix sums over (lo, n].
        std::vector<std::vector<Element>> prefixes;
        for (const auto& terms : windows) {
            std::vector<Element> prefix;
            prefix.reserve(terms.size() + 1);
            prefix.push_back(S.zero());
            for (const auto& t : terms) prefix.push_back(S.add(prefix.back(), t));
            prefixes.push_back(std::move(prefix));
        }
        for (BigInt m = lo; m <= hi; ++m) {
            for (BigInt n = m + 1; n <= hi; ++n) {
                Element gap = S.zero();
                for (const auto& prefix : prefixes) {
                    Element comp_gap = S.sub(prefix[static_cast<std::size_t>(n - lo)],
                                             prefix[static_cast<std::size_t>(m - lo)]);
                    gap = S.add(gap, S.abs(comp_gap));
                }
                ++report.points_checked;
                if (S.compare(gap, eps) >= 0)
                    detail::add_violation(report, eps, n, m, render(gap));
            }
        }
    }
    return report;
}

} // namespace ordlim
