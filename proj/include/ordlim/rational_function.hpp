#pragma once

#include <string>
#include <utility>

#include "ordlim/bigint.hpp"
#include "ordlim/errors.hpp"
#include "ordlim/polynomial.hpp"
#include "ordlim/rational.hpp"

namespace ordlim {

/// Element of Z(X), the ordered field of rational functions over Z,
/// ordered so that X is larger than every integer.
///
/// Canonical form: numerator and denominator have trivial polynomial gcd
/// and coprime contents, and the denominator's leading coefficient is
/// positive. Equality is structural on canonical form.
class RationalFn {
  public:
    RationalFn() : num_(), den_(BigInt(1)) {}
    RationalFn(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero())
            throw precondition_error("DivisionByZero", "rational function with zero denominator");
        canonicalize();
    }
    explicit RationalFn(const Rational& r) : num_(r.num()), den_(r.den()) {}
    RationalFn(long long c) : num_(BigInt(c)), den_(BigInt(1)) {} // NOLINT

    static RationalFn variable() { return RationalFn(IntPoly::monomial(1, 1), IntPoly(BigInt(1))); }

    const IntPoly& num() const noexcept { return num_; }
    const IntPoly& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }

    /// Sign in the order of Z(X): the sign of the numerator's leading
    /// coefficient (the denominator's is positive by canonical form).
    int sign() const { return num_.is_zero() ? 0 : num_.leading().sign(); }

    /// Magnitude degree d(f) = deg(num) - deg(den); governs size at infinity.
    /// Undefined (throws) for zero.
    int magnitude_degree() const {
        if (is_zero()) throw internal_error("ZeroMagnitude", "magnitude degree of 0");
        return num_.degree() - den_.degree();
    }

    friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
        return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
        return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
        return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
        if (b.is_zero()) throw precondition_error("DivisionByZero", "division by zero");
        return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFn operator-() const {
        RationalFn r = *this;
        r.num_ = -r.num_;
        return r;
    }

    RationalFn inverse() const {
        if (is_zero()) throw precondition_error("DivisionByZero", "inverse of zero");
        return RationalFn(den_, num_);
    }

    RationalFn abs() const { return sign() < 0 ? -*this : *this; }

    RationalFn pow(const BigInt& e) const {
        if (e < 0) throw internal_error("NegativeExponent", "pow requires e >= 0");
        if (e.is_zero() || is_zero()) return e.is_zero() ? RationalFn(1) : RationalFn(0);
        // Monomial bases (c*X^k)/(d*X^l) power directly; anything else is
        // capped so powers stay desk-scale.
        auto dn = num_.monomial_degree();
        auto dd = den_.monomial_degree();
        BigInt deg_estimate = e * (std::max(num_.degree(), den_.degree()) + 1);
        if (deg_estimate > (dn && dd ? 2'000'000 : 100'000))
            throw internal_error("EvaluationTooLarge", "polynomial power too large");
        if (dn && dd) {
            std::size_t exp = static_cast<std::size_t>(e);
            RationalFn r;
            r.num_ = IntPoly::monomial(big_pow(num_.leading(), e), *dn * exp);
            r.den_ = IntPoly::monomial(big_pow(den_.leading(), e), *dd * exp);
            r.canonicalize();
            return r;
        }
        RationalFn result(IntPoly(BigInt(1)), IntPoly(BigInt(1)));
        RationalFn base = *this;
        BigInt k = e;
        while (!k.is_zero()) {
            if (boost::multiprecision::bit_test(k, 0)) result = result * base;
            k >>= 1;
            if (!k.is_zero()) base = base * base;
        }
        return result;
    }

    int compare(const RationalFn& o) const { return (*this - o).sign(); }

    bool operator==(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalFn& o) const { return !(*this == o); }

  private:
    void canonicalize() {
        if (num_.is_zero()) {
            den_ = IntPoly(BigInt(1));
            return;
        }
        IntPoly g = poly_gcd(num_, den_);
        if (g.degree() > 0 || (!g.is_zero() && g.leading() != 1)) {
            num_ = poly_div_exact(num_, g);
            den_ = poly_div_exact(den_, g);
        }
        BigInt cn = num_.content();
        BigInt cd = den_.content();
        BigInt c = gcd_of(cn, cd);
        if (c > 1) {
            num_ = num_.divided_by_scalar(c);
            den_ = den_.divided_by_scalar(c);
        }
        if (den_.leading() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    IntPoly num_;
    IntPoly den_;
};

} // namespace ordlim
