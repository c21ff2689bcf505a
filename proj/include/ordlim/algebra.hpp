#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ordlim/norms.hpp"

namespace ordlim {

/// Structure constants gamma_ijk of a finite-dimensional algebra over a
/// base field: e_i * e_j = sum_k gamma_ijk e_k.
struct StructureConstants {
    const Structure* field = nullptr;
    std::size_t dim = 0;
    std::vector<Element> gamma; // dim^3 entries, (i, j, k) row-major

    const Element& at(std::size_t i, std::size_t j, std::size_t k) const {
        return gamma[(i * dim + j) * dim + k];
    }
    Element& at(std::size_t i, std::size_t j, std::size_t k) {
        return gamma[(i * dim + j) * dim + k];
    }

    static StructureConstants zeroed(const Structure& F, std::size_t n) {
        StructureConstants sc;
        sc.field = &F;
        sc.dim = n;
        sc.gamma.assign(n * n * n, F.zero());
        return sc;
    }
};

/// Coordinate vector a = sum a_i e_i of an algebra element.
using AlgebraElement = std::vector<Element>;

inline AlgebraElement algebra_mul(const StructureConstants& sc, const AlgebraElement& a,
                                  const AlgebraElement& b) {
    const Structure& F = *sc.field;
    AlgebraElement c(sc.dim, F.zero());
    for (std::size_t i = 0; i < sc.dim; ++i) {
        if (F.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < sc.dim; ++j) {
            if (F.is_zero(b[j])) continue;
            Element aibj = F.mul(a[i], b[j]);
            for (std::size_t k = 0; k < sc.dim; ++k) {
                const Element& g = sc.at(i, j, k);
                if (F.is_zero(g)) continue;
                c[k] = F.add(c[k], F.mul(aibj, g));
            }
        }
    }
    return c;
}

inline AlgebraElement algebra_add(const StructureConstants& sc, const AlgebraElement& a,
                                  const AlgebraElement& b) {
    AlgebraElement c(sc.dim, sc.field->zero());
    for (std::size_t k = 0; k < sc.dim; ++k) c[k] = sc.field->add(a[k], b[k]);
    return c;
}

inline AlgebraElement algebra_sub(const StructureConstants& sc, const AlgebraElement& a,
                                  const AlgebraElement& b) {
    AlgebraElement c(sc.dim, sc.field->zero());
    for (std::size_t k = 0; k < sc.dim; ++k) c[k] = sc.field->sub(a[k], b[k]);
    return c;
}

/// The corrected finite-dimensional pseudonorm ||a||' = n * M * sum_i |a_i|
/// with M = max |gamma_ijk|; `corrected = false` gives the raw sum_i |a_i|,
/// which in general fails submultiplicativity.
class AlgebraPseudonorm {
  public:
    AlgebraPseudonorm(const StructureConstants& sc, Pseudonorm base, bool corrected = true)
        : sc_(&sc), base_(std::move(base)), corrected_(corrected) {
        const Structure& H = base_.target();
        if (sc.dim == 0)
            throw precondition_error("EmptyAlgebra", "algebra of dimension zero");
        if (!H.caps.totally_ordered)
            throw precondition_error("NotTotallyOrdered",
                                     "norm target must be totally ordered to take max gamma");
        big_m_ = H.zero();
        bool any_nonzero = false;
        for (const auto& g : sc.gamma) {
            Element n = base_(g);
            if (!any_nonzero || H.compare(n, big_m_) > 0) big_m_ = n;
            any_nonzero = true;
        }
        degenerate_ = H.equal(big_m_, H.zero());
        // Zero-multiplication algebra: every product is 0, so the factor is
        // only cosmetic; use M = 1 to keep ||.||' a norm at all.
        if (degenerate_) big_m_ = H.one();
        scale_ = H.mul_by_count(BigInt(static_cast<std::int64_t>(sc.dim)), big_m_);
    }

    Element operator()(const AlgebraElement& a) const {
        const Structure& H = base_.target();
        Element s = H.zero();
        for (const auto& ai : a) s = H.add(s, base_(ai));
        return corrected_ ? H.mul(scale_, s) : s;
    }

    const StructureConstants& constants() const { return *sc_; }
    const Pseudonorm& base() const { return base_; }
    const Element& gamma_max() const { return big_m_; }
    const Element& scale() const { return scale_; }
    bool corrected() const { return corrected_; }
    bool degenerate() const { return degenerate_; }

  private:
    const StructureConstants* sc_;
    Pseudonorm base_;
    Element big_m_;
    Element scale_;
    bool corrected_;
    bool degenerate_;
};

inline AlgebraPseudonorm build_finite_dim_pseudonorm(const StructureConstants& sc,
                                                     const Pseudonorm& base) {
    return AlgebraPseudonorm(sc, base, /*corrected=*/true);
}

inline AlgebraElement sample_algebra_element(const StructureConstants& sc,
                                             std::mt19937_64& rng) {
    AlgebraElement a(sc.dim, sc.field->zero());
    for (auto& x : a) x = sc.field->sample(rng);
    return a;
}

/// Norm axioms for an algebra pseudonorm on sampled coordinate vectors.
inline LawReport check_algebra_norm_laws(const AlgebraPseudonorm& norm,
                                         std::uint64_t sample_count, std::uint64_t seed) {
    const StructureConstants& sc = norm.constants();
    const Structure& H = norm.base().target();
    std::mt19937_64 rng(seed);

    LawReport report;
    report.structure = sc.field->id;
    report.seed = seed;
    LawCheck nonneg{"algebra-norm-nonnegative"};
    LawCheck zero_iff{"algebra-norm-zero-iff-zero"};
    LawCheck triangle{"algebra-norm-triangle"};
    LawCheck submult{"algebra-norm-submultiplicative"};

    AlgebraElement zero(sc.dim, sc.field->zero());
    detail::record(zero_iff, H.equal(norm(zero), H.zero()), {}, "||0|| = 0", "violated");

    for (std::uint64_t t = 0; t < sample_count; ++t) {
        AlgebraElement a = sample_algebra_element(sc, rng);
        AlgebraElement b = sample_algebra_element(sc, rng);
        Element na = norm(a);
        Element nb = norm(b);
        detail::record(nonneg, H.compare(na, H.zero()) >= 0, {}, "||a|| >= 0", "violated");
        bool a_zero = true;
        for (const auto& x : a)
            if (!sc.field->is_zero(x)) a_zero = false;
        detail::record(zero_iff, a_zero == H.equal(na, H.zero()), {}, "||a|| = 0 iff a = 0",
                       "violated");
        detail::record(triangle,
                       H.compare(norm(algebra_sub(sc, a, b)), H.add(na, nb)) <= 0, {},
                       "||a-b|| <= ||a||+||b||", "violated");
        detail::record(submult,
                       H.compare(norm(algebra_mul(sc, a, b)), H.mul(na, nb)) <= 0, {},
                       "||ab|| <= ||a|| ||b||", "violated");
    }
    for (auto* check : {&nonneg, &zero_iff, &triangle, &submult})
        report.checks.push_back(std::move(*check));
    return report;
}

inline StructureConstants random_structure_constants(const Structure& F, std::size_t max_dim,
                                                     std::int64_t coeff_bound,
                                                     std::mt19937_64& rng) {
    std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, static_cast<std::int64_t>(max_dim)));
    StructureConstants sc = StructureConstants::zeroed(F, n);
    for (auto& g : sc.gamma)
        g = F.from_integer(BigInt(draw_int(rng, -coeff_bound, coeff_bound)));
    return sc;
}

struct RawNormViolation {
    StructureConstants sc;
    AlgebraElement a, b;
    Element norm_ab, norm_a, norm_b; // raw values, ||ab|| > ||a|| ||b||
};

/// Searches seeded random structure-constant tables for a witness that the
/// uncorrected norm sum_i |a_i| is not submultiplicative.
inline std::optional<RawNormViolation> search_raw_norm_violation(const Structure& F,
                                                                 std::uint64_t table_count,
                                                                 std::uint64_t pairs_per_table,
                                                                 std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Pseudonorm base = abs_norm(F);
    for (std::uint64_t t = 0; t < table_count; ++t) {
        StructureConstants sc = random_structure_constants(F, 3, 6, rng);
        AlgebraPseudonorm raw(sc, base, /*corrected=*/false);
        const Structure& H = base.target();
        for (std::uint64_t i = 0; i < pairs_per_table; ++i) {
            AlgebraElement a = sample_algebra_element(sc, rng);
            AlgebraElement b = sample_algebra_element(sc, rng);
            Element nab = raw(algebra_mul(sc, a, b));
            Element na = raw(a);
            Element nb = raw(b);
            if (H.compare(nab, H.mul(na, nb)) > 0)
                return RawNormViolation{std::move(sc), std::move(a), std::move(b),
                                        std::move(nab), std::move(na), std::move(nb)};
        }
    }
    return std::nullopt;
}

} // namespace ordlim
