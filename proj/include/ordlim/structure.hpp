#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>

#include "ordlim/element.hpp"
#include "ordlim/errors.hpp"

namespace ordlim {

struct Capabilities {
    bool has_one = true;
    bool has_neg = false;
    bool has_inverses = false;
    bool totally_ordered = true;
    bool strict_order_compatible = true;
    bool dense = false;
    bool shrinkable = false;
    std::optional<bool> archimedean;
};

struct SamplerConfig {
    std::int64_t int_bound = 1'000'000; // numerators/denominators/coefficients
    std::int64_t max_pexp = 10;         // p-power exponent for Z[1/p]
    int max_degree = 6;                 // sampled polynomial degree for Z(X)
};

/// A registered totally ordered structure. Values are immutable and all
/// operations are pure, so descriptors are safe to share across threads.
class Structure {
  public:
    std::string id;
    Kind kind = Kind::rational;
    Capabilities caps;
    std::int64_t p = 0;       // prime, for Z[1/p]
    bool nonneg_only = false; // nonneg:<base> cone of an ordered structure
    SamplerConfig sampler;

    Element zero() const {
        switch (kind) {
            case Kind::rational: return Rational(0);
            case Kind::z1p: return Z1p(p, 0);
            case Kind::zx: return RationalFn(0);
            case Kind::maxtimes: return MaxTimes::bottom();
        }
        throw internal_error("BadKind", "unreachable");
    }

    Element one() const {
        switch (kind) {
            case Kind::rational: return Rational(1);
            case Kind::z1p: return Z1p(p, 1);
            case Kind::zx: return RationalFn(1);
            case Kind::maxtimes: return MaxTimes(Rational(1));
        }
        throw internal_error("BadKind", "unreachable");
    }

    Element from_integer(const BigInt& n) const {
        switch (kind) {
            case Kind::rational: return Rational(n);
            case Kind::z1p: return Z1p(p, n);
            case Kind::zx: return RationalFn(IntPoly(n), IntPoly(BigInt(1)));
            case Kind::maxtimes:
                if (n.is_zero()) return MaxTimes::bottom();
                if (n.sign() < 0)
                    throw precondition_error("WrongStructure",
                                             "negative integers do not live in G0");
                return MaxTimes(Rational(n));
        }
        throw internal_error("BadKind", "unreachable");
    }

    Element add(const Element& a, const Element& b) const {
        check(a), check(b);
        switch (kind) {
            case Kind::rational: return std::get<Rational>(a) + std::get<Rational>(b);
            case Kind::z1p: return std::get<Z1p>(a) + std::get<Z1p>(b);
            case Kind::zx: return std::get<RationalFn>(a) + std::get<RationalFn>(b);
            case Kind::maxtimes: return std::get<MaxTimes>(a) + std::get<MaxTimes>(b);
        }
        throw internal_error("BadKind", "unreachable");
    }

    Element mul(const Element& a, const Element& b) const {
        check(a), check(b);
        switch (kind) {
            case Kind::rational: return std::get<Rational>(a) * std::get<Rational>(b);
            case Kind::z1p: return std::get<Z1p>(a) * std::get<Z1p>(b);
            case Kind::zx: return std::get<RationalFn>(a) * std::get<RationalFn>(b);
            case Kind::maxtimes: return std::get<MaxTimes>(a) * std::get<MaxTimes>(b);
        }
        throw internal_error("BadKind", "unreachable");
    }

    Element neg(const Element& a) const {
        if (!caps.has_neg)
            throw precondition_error("NotApplicable", "structure " + id + " has no negation");
        check(a);
        switch (kind) {
            case Kind::rational: return -std::get<Rational>(a);
            case Kind::z1p: return -std::get<Z1p>(a);
            case Kind::zx: return -std::get<RationalFn>(a);
            default: throw internal_error("BadKind", "unreachable");
        }
    }

    Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

    Element invert(const Element& a) const {
        check(a);
        switch (kind) {
            case Kind::rational: return std::get<Rational>(a).inverse();
            case Kind::z1p: return std::get<Z1p>(a).inverse();
            case Kind::zx: return std::get<RationalFn>(a).inverse();
            case Kind::maxtimes: return std::get<MaxTimes>(a).inverse();
        }
        throw internal_error("BadKind", "unreachable");
    }

    Element pow(const Element& a, const BigInt& e) const {
        check(a);
        switch (kind) {
            case Kind::rational: return std::get<Rational>(a).pow(e);
            case Kind::z1p: return std::get<Z1p>(a).pow(e);
            case Kind::zx: return std::get<RationalFn>(a).pow(e);
            case Kind::maxtimes: return std::get<MaxTimes>(a).pow(e);
        }
        throw internal_error("BadKind", "unreachable");
    }

    int compare(const Element& a, const Element& b) const {
        check(a), check(b);
        switch (kind) {
            case Kind::rational: return std::get<Rational>(a).compare(std::get<Rational>(b));
            case Kind::z1p: return std::get<Z1p>(a).compare(std::get<Z1p>(b));
            case Kind::zx: return std::get<RationalFn>(a).compare(std::get<RationalFn>(b));
            case Kind::maxtimes: return std::get<MaxTimes>(a).compare(std::get<MaxTimes>(b));
        }
        throw internal_error("BadKind", "unreachable");
    }

    bool is_zero(const Element& a) const { return compare(a, zero()) == 0; }
    bool is_positive(const Element& a) const { return compare(a, zero()) > 0; }
    bool equal(const Element& a, const Element& b) const { return compare(a, b) == 0; }

    /// |x| = max(x, -x) for rings; for G0 (no negation) the identity map,
    /// since every element already sits in the non-negative cone.
    Element abs(const Element& a) const {
        if (!caps.has_neg) return a;
        return compare(a, zero()) < 0 ? neg(a) : a;
    }

    Element mul_by_count(const BigInt& k, const Element& a) const {
        // k-fold addition, computed exactly (k * a in rings).
        switch (kind) {
            case Kind::rational: return Rational(k) * std::get<Rational>(a);
            case Kind::z1p: return Z1p(p, k) * std::get<Z1p>(a);
            case Kind::zx: return RationalFn(IntPoly(k), IntPoly(BigInt(1))) * std::get<RationalFn>(a);
            case Kind::maxtimes: return a; // x max x ... max x = x
        }
        throw internal_error("BadKind", "unreachable");
    }

    /// Least candidate n with n*f > g, for f > 0; nullopt when no such n
    /// exists (only possible in the non-Archimedean Z(X)).
    std::optional<BigInt> archimedean_gap(const Element& f, const Element& g) const;

    Element sample(std::mt19937_64& rng) const;

    bool operator==(const Structure& o) const { return id == o.id; }

  private:
    void check(const Element& e) const {
        bool ok = false;
        switch (kind) {
            case Kind::rational: ok = std::holds_alternative<Rational>(e); break;
            case Kind::z1p: ok = std::holds_alternative<Z1p>(e); break;
            case Kind::zx: ok = std::holds_alternative<RationalFn>(e); break;
            case Kind::maxtimes: ok = std::holds_alternative<MaxTimes>(e); break;
        }
        if (!ok)
            throw internal_error("MixedStructures",
                                 "element does not belong to structure " + id);
    }
};

// --- ordering of Z(X) and the Archimedean decision procedure -------------

inline int zx_sign(const RationalFn& f) { return f.sign(); }

/// Least candidate n with n*f > g in Z(X), decided by magnitude degrees;
/// nullopt witnesses that no multiple of f exceeds g.
inline std::optional<BigInt> zx_archimedean_gap(const RationalFn& f, const RationalFn& g) {
    if (f.sign() <= 0) throw precondition_error("NonPositiveF", "gap requires f > 0");
    if (g.sign() <= 0) return BigInt(1); // n*f = f > 0 >= g
    int df = f.magnitude_degree();
    int dg = g.magnitude_degree();
    if (df > dg) return BigInt(1); // f - g keeps f's positive leading term
    if (df < dg) return std::nullopt;
    // Equal magnitude degree: start just above the ratio of leading terms.
    BigInt lead_g = g.num().leading() * f.den().leading();
    BigInt lead_f = f.num().leading() * g.den().leading();
    BigInt n = floor_div(lead_g, lead_f) + 1;
    if (n < 1) n = 1;
    RationalFn nf = RationalFn(IntPoly(n), IntPoly(BigInt(1))) * f;
    while ((nf - g).sign() <= 0) {
        ++n;
        nf = nf + f;
    }
    return n;
}

inline std::optional<BigInt> Structure::archimedean_gap(const Element& f,
                                                        const Element& g) const {
    if (compare(f, zero()) <= 0)
        throw precondition_error("NonPositiveF", "archimedean gap requires f > 0");
    switch (kind) {
        case Kind::rational: {
            const auto& rf = std::get<Rational>(f);
            const auto& rg = std::get<Rational>(g);
            if (rg.sign() <= 0) return BigInt(1);
            BigInt n = floor_div(rg.num() * rf.den(), rf.num() * rg.den()) + 1;
            while ((Rational(n) * rf).compare(rg) <= 0) ++n;
            return n;
        }
        case Kind::z1p: {
            Rational rf = std::get<Z1p>(f).to_rational();
            Rational rg = std::get<Z1p>(g).to_rational();
            if (rg.sign() <= 0) return BigInt(1);
            BigInt n = floor_div(rg.num() * rf.den(), rf.num() * rg.den()) + 1;
            while ((Rational(n) * rf).compare(rg) <= 0) ++n;
            return n;
        }
        case Kind::zx:
            return zx_archimedean_gap(std::get<RationalFn>(f), std::get<RationalFn>(g));
        case Kind::maxtimes:
            // n-fold max leaves f unchanged, so n*f > g iff f > g.
            return compare(f, g) > 0 ? std::optional<BigInt>(BigInt(1)) : std::nullopt;
    }
    throw internal_error("BadKind", "unreachable");
}

// --- seeded samplers ------------------------------------------------------

inline std::int64_t draw_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    // Deliberately simple modular draw: portable and deterministic by seed.
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Element Structure::sample(std::mt19937_64& rng) const {
    const std::int64_t B = sampler.int_bound;
    switch (kind) {
        case Kind::rational: {
            Rational r(BigInt(draw_int(rng, -B, B)), BigInt(draw_int(rng, 1, B)));
            if (nonneg_only && r.sign() < 0) r = -r;
            return r;
        }
        case Kind::z1p: {
            Z1p z(p, BigInt(draw_int(rng, -B, B)), draw_int(rng, 0, sampler.max_pexp));
            if (nonneg_only && z.sign() < 0) z = -z;
            return z;
        }
        case Kind::zx: {
            auto draw_poly = [&](bool nonzero) {
                while (true) {
                    int deg = static_cast<int>(draw_int(rng, 0, sampler.max_degree));
                    std::vector<BigInt> c(static_cast<std::size_t>(deg) + 1);
                    for (auto& x : c) x = draw_int(rng, -B, B);
                    IntPoly poly(std::move(c));
                    if (!nonzero || !poly.is_zero()) return poly;
                }
            };
            RationalFn f(draw_poly(false), draw_poly(true));
            if (nonneg_only && f.sign() < 0) f = -f;
            return f;
        }
        case Kind::maxtimes: {
            if (rng() % 8 == 0) return MaxTimes::bottom();
            return MaxTimes(
                Rational(BigInt(draw_int(rng, 1, B)), BigInt(draw_int(rng, 1, B))));
        }
    }
    throw internal_error("BadKind", "unreachable");
}

// --- registry --------------------------------------------------------------

/// Looks up a structure by identifier: `rational`, `z1p:<p>`, `zx`,
/// `maxtimes-qpos`, or `nonneg:<base>`. Descriptors are cached.
inline const Structure& structure_for(const std::string& id) {
    static std::map<std::string, std::unique_ptr<Structure>> cache;
    // Recursive: nonneg:<base> resolves its base structure while registering.
    static std::recursive_mutex mu;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(id);
    if (it != cache.end()) return *it->second;

    auto s = std::make_unique<Structure>();
    s->id = id;
    if (id == "rational") {
        s->kind = Kind::rational;
        s->caps = {true, true, true, true, true, true, true, true};
    } else if (id.rfind("z1p:", 0) == 0) {
        std::int64_t p = 0;
        try {
            p = std::stoll(id.substr(4));
        } catch (...) {
            throw usage_error("UnknownStructure", "bad prime in " + id);
        }
        if (!is_small_prime(p))
            throw usage_error("UnknownStructure", id + ": " + std::to_string(p) + " is not prime");
        s->kind = Kind::z1p;
        s->p = p;
        s->caps = {true, true, false, true, true, true, true, true};
    } else if (id == "zx") {
        s->kind = Kind::zx;
        s->caps = {true, true, true, true, true, true, true, false};
    } else if (id == "maxtimes-qpos") {
        s->kind = Kind::maxtimes;
        s->caps = {true, false, true, true, true, true, true, false};
    } else if (id.rfind("nonneg:", 0) == 0) {
        const Structure& base = structure_for(id.substr(7));
        if (base.nonneg_only)
            throw usage_error("UnknownStructure", "nested nonneg: in " + id);
        if (base.kind == Kind::maxtimes)
            throw usage_error("UnknownStructure", "maxtimes-qpos is already a non-negative cone");
        *s = base;
        s->id = id;
        s->nonneg_only = true;
        s->caps.has_neg = false;
        s->caps.has_inverses = base.caps.has_inverses;
        // The cone of a dense ordered field stays dense and shrinkable;
        // Z[1/p]'s cone keeps its power witnesses.
        s->caps.dense = base.caps.dense;
        s->caps.shrinkable = base.caps.shrinkable;
    } else {
        throw usage_error("UnknownStructure", "no structure registered as '" + id + "'");
    }
    auto [pos, inserted] = cache.emplace(id, std::move(s));
    return *pos->second;
}

} // namespace ordlim
