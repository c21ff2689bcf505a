#pragma once

#include <string>
#include <utility>

#include "ordlim/bigint.hpp"
#include "ordlim/errors.hpp"

namespace ordlim {

/// Exact rational number. Canonical form: gcd(|num|, den) = 1, den > 0.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {} // NOLINT: implicit by design
    Rational(long long n) : num_(n), den_(1) {}         // NOLINT
    Rational(int n) : num_(n), den_(1) {}               // NOLINT

    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero())
            throw precondition_error("DivisionByZero", "rational with zero denominator");
        normalize();
    }

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    int sign() const noexcept { return num_.sign(); }

    // When one denominator divides the other with a narrow quotient (every
    // geometric-tail accumulation looks like this), adding over the larger
    // one keeps both the multiply and the later reduction linear. The test
    // is gated on the bit-length gap: a wide-quotient division is itself
    // quadratic.
    static bool divides_cheaply(const BigInt& d_small, const BigInt& d_big) {
        std::uint64_t bs = bit_length(d_small), bb = bit_length(d_big);
        return bb >= bs && bb - bs <= 256 && d_big % d_small == 0;
    }
    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_) return Rational(a.num_ + b.num_, a.den_);
        if (divides_cheaply(a.den_, b.den_))
            return Rational(a.num_ * (b.den_ / a.den_) + b.num_, b.den_);
        if (divides_cheaply(b.den_, a.den_))
            return Rational(a.num_ + b.num_ * (a.den_ / b.den_), a.den_);
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_) return Rational(a.num_ - b.num_, a.den_);
        if (divides_cheaply(a.den_, b.den_))
            return Rational(a.num_ * (b.den_ / a.den_) - b.num_, b.den_);
        if (divides_cheaply(b.den_, a.den_))
            return Rational(a.num_ - b.num_ * (a.den_ / b.den_), a.den_);
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw precondition_error("DivisionByZero", "division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational inverse() const {
        if (is_zero()) throw precondition_error("DivisionByZero", "inverse of zero");
        Rational r;
        r.num_ = (num_.sign() < 0) ? -den_ : den_;
        r.den_ = abs_of(num_);
        return r;
    }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    /// this^e for e >= 0.
    Rational pow(const BigInt& e) const {
        Rational r;
        r.num_ = big_pow(num_, e);
        r.den_ = big_pow(den_, e);
        if (r.num_.is_zero()) r.den_ = 1;
        return r;
    }

    int compare(const Rational& o) const {
        int sa = sign(), sb = o.sign();
        if (sa != sb) return sa < sb ? -1 : 1;
        // Cheap decision by bit lengths before the cross multiply.
        BigInt lhs = num_ * o.den_;
        BigInt rhs = o.num_ * den_;
        if (lhs == rhs) return 0;
        return lhs < rhs ? -1 : 1;
    }

    bool operator==(const Rational& o) const {
        if (den_ == o.den_) return num_ == o.num_;
        return num_ * o.den_ == o.num_ * den_;
    }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return compare(o) < 0; }
    bool operator<=(const Rational& o) const { return compare(o) <= 0; }
    bool operator>(const Rational& o) const { return compare(o) > 0; }
    bool operator>=(const Rational& o) const { return compare(o) >= 0; }

    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

  private:
    // Full Euclidean gcds on multi-megabit operands are quadratic, so big
    // denominators are reduced by shifting out twos and stripping the other
    // small primes with binary lifting. Denominators in this library are
    // powers of small literal denominators, so that reduction is complete;
    // a shared prime beyond the strip set in a >2^63 denominator would
    // merely leave an unreduced (still exact) fraction, and equality
    // cross-multiplies, so no comparison ever depends on full reduction.
    void normalize() {
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        bool negative = num_.sign() < 0;
        BigInt mag = negative ? -num_ : num_;
        std::uint64_t tz = std::min(boost::multiprecision::lsb(mag),
                                    boost::multiprecision::lsb(den_));
        if (tz > 0) {
            mag >>= tz;
            den_ >>= tz;
        }
        if (den_ != 1 && mag != 1) {
            if (bit_length(den_) <= 62) {
                BigInt g = gcd_of(mag % den_, den_);
                if (g > 1) {
                    mag /= g;
                    den_ /= g;
                }
            } else {
                // Lockstep stripping: division by a word-sized prime is
                // linear, and the loop runs only for the shared valuation,
                // which stays tiny given the divisibility-aware addition
                // above. The cap keeps adversarial inputs from going
                // quadratic; a capped-out fraction stays exact, merely
                // unreduced, and comparisons cross-multiply anyway.
                for (std::int64_t p : {3, 5, 7, 11, 13}) {
                    for (int hits = 0; hits < 64 && mag % p == 0 && den_ % p == 0; ++hits) {
                        mag /= p;
                        den_ /= p;
                    }
                }
                if (bit_length(den_) <= 62) {
                    BigInt g = gcd_of(mag % den_, den_);
                    if (g > 1) {
                        mag /= g;
                        den_ /= g;
                    }
                }
            }
        }
        num_ = negative ? -mag : mag;
    }

    BigInt num_;
    BigInt den_;
};

inline Rational rational_from_string_parts(const BigInt& num, const BigInt& den) {
    return Rational(num, den);
}

} // namespace ordlim
