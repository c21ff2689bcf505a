#pragma once

#include <cstdint>
#include <string>

#include "ordlim/laws.hpp"
#include "ordlim/structure.hpp"

namespace ordlim {

enum class NormStrength { pseudonorm, multiplicative_norm, ultrametric_valuation };

inline std::string to_string(NormStrength s) {
    switch (s) {
        case NormStrength::pseudonorm: return "pseudonorm";
        case NormStrength::multiplicative_norm: return "multiplicative_norm";
        case NormStrength::ultrametric_valuation: return "ultrametric_valuation";
    }
    return "?";
}

/// A pseudonorm from one registered structure into another's non-negative
/// cone. The two shipped families are the absolute value |x| = max(x, -x)
/// into the host ring and the p-adic valuation |r|_p = p^(-v_p(r)) into G0.
class Pseudonorm {
  public:
    enum class Family { abs, padic };

    static Pseudonorm abs_norm(const Structure& S) {
        if (!S.caps.totally_ordered)
            throw precondition_error("NotTotallyOrdered", S.id + " is not totally ordered");
        if (!S.caps.has_neg)
            throw precondition_error("NotApplicable",
                                     "|x| = max(x,-x) needs negation; " + S.id + " has none");
        Pseudonorm n;
        n.family_ = Family::abs;
        n.source_ = &S;
        n.target_ = &S;
        // Our instances are entire, so |xy| = |x||y| holds exactly.
        n.strength_ = NormStrength::multiplicative_norm;
        return n;
    }

    static Pseudonorm padic_valuation_norm(std::int64_t p) {
        if (!is_small_prime(p))
            throw usage_error("UnknownStructure", std::to_string(p) + " is not prime");
        Pseudonorm n;
        n.family_ = Family::padic;
        n.p_ = p;
        n.source_ = &structure_for("rational");
        n.target_ = &structure_for("maxtimes-qpos");
        n.strength_ = NormStrength::ultrametric_valuation;
        return n;
    }

    Element operator()(const Element& e) const {
        switch (family_) {
            case Family::abs:
                return source_->abs(e);
            case Family::padic: {
                const auto& r = std::get<Rational>(e);
                if (r.is_zero()) return MaxTimes::bottom();
                BigInt v = valuation_of(r.num()) - valuation_of(r.den());
                Rational value = (v >= 0) ? Rational(BigInt(1), big_pow(p_, v))
                                          : Rational(big_pow(p_, -v));
                return MaxTimes(value);
            }
        }
        throw internal_error("BadNorm", "unreachable");
    }

    const Structure& source() const { return *source_; }
    const Structure& target() const { return *target_; }
    NormStrength strength() const { return strength_; }
    Family family() const { return family_; }
    std::int64_t p() const { return p_; }

    std::string kind_id() const {
        return family_ == Family::abs ? "abs" : "padic:" + std::to_string(p_);
    }

  private:
    BigInt valuation_of(BigInt x) const {
        BigInt v = 0;
        while (x % p_ == 0) {
            x /= p_;
            ++v;
        }
        return v;
    }

    Family family_ = Family::abs;
    std::int64_t p_ = 0;
    const Structure* source_ = nullptr;
    const Structure* target_ = nullptr;
    NormStrength strength_ = NormStrength::pseudonorm;
};

inline Pseudonorm abs_norm(const Structure& S) { return Pseudonorm::abs_norm(S); }
inline Pseudonorm padic_valuation_norm(std::int64_t p) {
    return Pseudonorm::padic_valuation_norm(p);
}

/// Samples pairs and checks the axioms matching the declared strength.
inline LawReport check_pseudonorm_laws(const Pseudonorm& norm, std::uint64_t sample_count,
                                       std::uint64_t seed) {
    const Structure& R = norm.source();
    const Structure& H = norm.target();
    std::mt19937_64 rng(seed);

    LawReport report;
    report.structure = R.id;
    report.seed = seed;

    LawCheck nonneg{"norm-nonnegative"};
    LawCheck zero_iff{"norm-zero-iff-zero"};
    LawCheck triangle{"norm-triangle"};
    LawCheck submult{"norm-submultiplicative"};
    LawCheck mult_eq{"norm-multiplicative-equality"};
    LawCheck ultra{"norm-ultrametric"};
    LawCheck metric{"metric-triangle"};

    const Element hzero = H.zero();
    detail::record(zero_iff, H.equal(norm(R.zero()), hzero), {}, "|0| = 0", "violated");

    for (std::uint64_t i = 0; i < sample_count; ++i) {
        Element r = R.sample(rng);
        Element s = R.sample(rng);
        Element nr = norm(r);
        Element ns = norm(s);

        detail::record(nonneg, H.compare(nr, hzero) >= 0, {&r}, "|r| >= 0", "violated");
        detail::record(zero_iff, R.is_zero(r) == H.equal(nr, hzero), {&r}, "|r| = 0 iff r = 0",
                       "violated");
        if (R.caps.has_neg) {
            Element diff = norm(R.sub(r, s));
            detail::record(triangle, H.compare(diff, H.add(nr, ns)) <= 0, {&r, &s},
                           "|r-s| <= |r|+|s|", "violated");
        }
        Element prod = norm(R.mul(r, s));
        Element bound = H.mul(nr, ns);
        detail::record(submult, H.compare(prod, bound) <= 0, {&r, &s}, "|rs| <= |r||s|",
                       "violated");
        if (norm.strength() != NormStrength::pseudonorm)
            detail::record(mult_eq, H.equal(prod, bound), {&r, &s}, "|rs| = |r||s|", "violated");
        if (norm.strength() == NormStrength::ultrametric_valuation) {
            Element nsum = norm(R.add(r, s));
            Element mx = H.compare(nr, ns) >= 0 ? nr : ns;
            bool ok = H.compare(nsum, mx) <= 0;
            // Classical sharpening: equality whenever |r| != |s|.
            if (ok && !H.equal(nr, ns)) ok = H.equal(nsum, mx);
            detail::record(ultra, ok, {&r, &s}, "|r+s| <= max(|r|,|s|), = when |r| != |s|",
                           "violated");
        }
        if (R.caps.has_neg) {
            Element t = R.sample(rng);
            Element dxz = norm(R.sub(r, t));
            Element via = H.add(norm(R.sub(r, s)), norm(R.sub(s, t)));
            detail::record(metric, H.compare(dxz, via) <= 0, {&r, &s, &t},
                           "d(x,z) <= d(x,y)+d(y,z)", "violated");
        }
    }

    for (auto* check : {&nonneg, &zero_iff, &triangle, &submult, &mult_eq, &ultra, &metric})
        if (check->samples_tested > 0) report.checks.push_back(std::move(*check));
    return report;
}

} // namespace ordlim
