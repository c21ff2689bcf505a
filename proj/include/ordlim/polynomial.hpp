#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ordlim/bigint.hpp"
#include "ordlim/errors.hpp"

namespace ordlim {

/// Polynomial over Z, coefficients stored in ascending degree.
/// The zero polynomial is the empty vector; otherwise the leading
/// coefficient is nonzero.
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(BigInt constant) { // NOLINT: implicit by design
        if (!constant.is_zero()) c_.push_back(std::move(constant));
    }
    IntPoly(long long constant) : IntPoly(BigInt(constant)) {} // NOLINT

    static IntPoly monomial(BigInt coeff, std::size_t degree) {
        if (coeff.is_zero()) return IntPoly();
        std::vector<BigInt> c(degree + 1, BigInt(0));
        c[degree] = std::move(coeff);
        return IntPoly(std::move(c));
    }

    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const noexcept { return c_; }

    const BigInt& leading() const {
        if (is_zero()) throw internal_error("ZeroPolynomial", "leading coefficient of 0");
        return c_.back();
    }

    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), BigInt(0));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return IntPoly(std::move(c));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), BigInt(0));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return IntPoly(std::move(c));
    }
    IntPoly operator-() const {
        IntPoly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return IntPoly();
        if (auto d = a.monomial_degree()) return b.shifted_scaled(a.c_.back(), *d);
        if (auto d = b.monomial_degree()) return a.shifted_scaled(b.c_.back(), *d);
        std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(c));
    }

    /// Degree when the polynomial has a single nonzero coefficient.
    std::optional<std::size_t> monomial_degree() const {
        if (is_zero()) return std::nullopt;
        for (std::size_t i = 0; i + 1 < c_.size(); ++i)
            if (!c_[i].is_zero()) return std::nullopt;
        return c_.size() - 1;
    }

    IntPoly shifted_scaled(const BigInt& k, std::size_t degree) const {
        if (is_zero() || k.is_zero()) return IntPoly();
        std::vector<BigInt> c(c_.size() + degree, BigInt(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) c[i + degree] = c_[i] * k;
        return IntPoly(std::move(c));
    }

    IntPoly scaled(const BigInt& k) const {
        if (k.is_zero()) return IntPoly();
        IntPoly r = *this;
        for (auto& x : r.c_) x *= k;
        return r;
    }

    /// Divide all coefficients by k; requires exactness.
    IntPoly divided_by_scalar(const BigInt& k) const {
        IntPoly r = *this;
        for (auto& x : r.c_) {
            if (x % k != 0) throw internal_error("InexactDivision", "scalar division not exact");
            x /= k;
        }
        return r;
    }

    /// gcd of all coefficients, always >= 0; 0 for the zero polynomial.
    BigInt content() const {
        BigInt g = 0;
        for (const auto& x : c_) {
            g = gcd_of(g, abs_of(x));
            if (g == 1) break;
        }
        return g;
    }

    IntPoly primitive_part() const {
        if (is_zero()) return IntPoly();
        BigInt g = content();
        return g == 1 ? *this : divided_by_scalar(g);
    }

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return !(*this == o); }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<BigInt> c_;
};

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a  mod  b, for deg a >= deg b.
inline IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
    int db = b.degree();
    const BigInt& lb = b.leading();
    while (!a.is_zero() && a.degree() >= db) {
        int shift = a.degree() - db;
        BigInt la = a.leading();
        a = a.scaled(lb) - (b * IntPoly::monomial(la, static_cast<std::size_t>(shift)));
    }
    return a;
}

/// Primitive gcd via the primitive pseudo-remainder sequence.
/// Result is primitive with positive leading coefficient (or zero).
inline IntPoly poly_gcd(IntPoly a, IntPoly b) {
    if (a.is_zero()) b = b.primitive_part();
    if (a.is_zero()) return b.is_zero() || b.leading() > 0 ? b : -b;
    if (b.is_zero()) {
        a = a.primitive_part();
        return a.leading() > 0 ? a : -a;
    }
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (true) {
        IntPoly r = pseudo_remainder(a, b);
        if (r.is_zero()) break;
        a = b;
        b = r.primitive_part();
    }
    return b.leading() > 0 ? b : -b;
}

/// Exact polynomial division; throws if b does not divide a over Z.
inline IntPoly poly_div_exact(IntPoly a, const IntPoly& b) {
    if (b.is_zero()) throw internal_error("DivisionByZero", "polynomial division by zero");
    if (a.is_zero()) return IntPoly();
    int db = b.degree();
    const BigInt& lb = b.leading();
    std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - db) + 1, BigInt(0));
    while (!a.is_zero() && a.degree() >= db) {
        if (a.leading() % lb != 0)
            throw internal_error("InexactDivision", "polynomial division not exact");
        BigInt qc = a.leading() / lb;
        int shift = a.degree() - db;
        q[static_cast<std::size_t>(shift)] = qc;
        a = a - (b * IntPoly::monomial(qc, static_cast<std::size_t>(shift)));
    }
    if (!a.is_zero()) throw internal_error("InexactDivision", "polynomial division not exact");
    return IntPoly(std::move(q));
}

} // namespace ordlim
