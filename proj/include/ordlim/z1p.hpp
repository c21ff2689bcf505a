#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "ordlim/bigint.hpp"
#include "ordlim/errors.hpp"
#include "ordlim/rational.hpp"

namespace ordlim {

/// Element m / p^n of Z[1/p] for a fixed prime p.
/// Normal form: p does not divide m unless n = 0, and n >= 0.
class Z1p {
  public:
    Z1p() : m_(0), n_(0), p_(2) {}
    Z1p(std::int64_t p, BigInt m, std::int64_t n = 0) : m_(std::move(m)), n_(n), p_(p) {
        if (n_ < 0) throw internal_error("BadExponent", "negative p-power exponent");
        normalize();
    }

    static Z1p from_rational(std::int64_t p, const Rational& r) {
        // Denominator must be a power of p.
        BigInt den = r.den();
        std::int64_t n = 0;
        if (p == 2) {
            if (den != 1 && boost::multiprecision::lsb(den) != boost::multiprecision::msb(den))
                throw usage_error("WrongStructure", "denominator is not a power of 2");
            n = den == 1 ? 0 : static_cast<std::int64_t>(boost::multiprecision::lsb(den));
        } else {
            // Reconstruct the candidate power from the bit length and verify
            // by equality; no big-by-big division this way.
            double log2p = std::log2(static_cast<double>(p));
            auto bits = static_cast<double>(bit_length(den));
            auto guess = static_cast<std::int64_t>(bits / log2p);
            n = -1;
            for (std::int64_t k = std::max<std::int64_t>(0, guess - 2); k <= guess + 2; ++k) {
                if (big_pow(p, k) == den) {
                    n = k;
                    break;
                }
            }
            if (n < 0)
                throw usage_error("WrongStructure",
                                  "denominator is not a power of " + std::to_string(p));
        }
        return Z1p(p, r.num(), n);
    }

    Rational to_rational() const { return Rational(m_, big_pow(p_, n_)); }

    const BigInt& m() const noexcept { return m_; }
    std::int64_t n() const noexcept { return n_; }
    std::int64_t p() const noexcept { return p_; }

    bool is_zero() const noexcept { return m_.is_zero(); }
    int sign() const noexcept { return m_.sign(); }

    friend Z1p operator+(const Z1p& a, const Z1p& b) {
        a.check_same(b);
        std::int64_t n = std::max(a.n_, b.n_);
        BigInt m = a.m_ * big_pow(a.p_, n - a.n_) + b.m_ * big_pow(b.p_, n - b.n_);
        return Z1p(a.p_, std::move(m), n);
    }
    friend Z1p operator-(const Z1p& a, const Z1p& b) { return a + (-b); }
    friend Z1p operator*(const Z1p& a, const Z1p& b) {
        a.check_same(b);
        return Z1p(a.p_, a.m_ * b.m_, a.n_ + b.n_);
    }
    Z1p operator-() const {
        Z1p r = *this;
        r.m_ = -r.m_;
        return r;
    }

    /// Units of Z[1/p] are exactly +-p^k; everything else has no inverse here.
    bool is_unit() const {
        if (m_.is_zero()) return false;
        BigInt a = abs_of(m_);
        while (a % p_ == 0) a /= p_;
        return a == 1;
    }

    Z1p inverse() const {
        if (is_zero()) throw precondition_error("DivisionByZero", "inverse of zero");
        if (!is_unit())
            throw precondition_error("NotAUnit",
                                     str() + " is not a unit of Z[1/" + std::to_string(p_) + "]");
        // m = +-p^k, value = +-p^(k-n); inverse = +-p^(n-k).
        std::int64_t k = 0;
        BigInt a = abs_of(m_);
        while (a % p_ == 0) {
            a /= p_;
            ++k;
        }
        std::int64_t e = n_ - k;
        BigInt m = (e >= 0) ? big_pow(p_, e) : BigInt(1);
        std::int64_t n = (e >= 0) ? 0 : -e;
        if (m_.sign() < 0) m = -m;
        return Z1p(p_, std::move(m), n);
    }

    Z1p abs() const { return sign() < 0 ? -*this : *this; }

    Z1p pow(const BigInt& e) const {
        if (e < 0) throw internal_error("NegativeExponent", "pow requires e >= 0");
        BigInt ne = e * n_;
        if (ne > BigInt(std::int64_t(1) << 40))
            throw internal_error("EvaluationTooLarge", "p-power exponent too large");
        Z1p r(p_, big_pow(m_, e), static_cast<std::int64_t>(ne));
        return r;
    }

    int compare(const Z1p& o) const {
        check_same(o);
        int sa = sign(), sb = o.sign();
        if (sa != sb) return sa < sb ? -1 : 1;
        std::int64_t n = std::max(n_, o.n_);
        BigInt lhs = m_ * big_pow(p_, n - n_);
        BigInt rhs = o.m_ * big_pow(p_, n - o.n_);
        if (lhs == rhs) return 0;
        return lhs < rhs ? -1 : 1;
    }

    bool operator==(const Z1p& o) const { return p_ == o.p_ && n_ == o.n_ && m_ == o.m_; }
    bool operator!=(const Z1p& o) const { return !(*this == o); }

    std::string str() const { return to_rational().str(); }

  private:
    void check_same(const Z1p& o) const {
        if (p_ != o.p_)
            throw internal_error("MixedStructures", "Z[1/p] elements with different p");
    }

    void normalize() {
        if (m_.is_zero()) {
            n_ = 0;
            return;
        }
        while (n_ > 0 && m_ % p_ == 0) {
            m_ /= p_;
            --n_;
        }
    }

    BigInt m_;
    std::int64_t n_;
    std::int64_t p_;
};

} // namespace ordlim
