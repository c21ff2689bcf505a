#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ordlim/errors.hpp"

namespace ordlim {

using BigInt = boost::multiprecision::cpp_int;

inline int sign_of(const BigInt& x) { return x.sign(); }

inline BigInt abs_of(const BigInt& x) { return boost::multiprecision::abs(x); }

inline BigInt gcd_of(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

// Hard cap on the bit size of any single exact value we are willing to
// materialize. Powers past this raise EvaluationTooLarge; validators then
// fall back to monotone bounds.
inline constexpr std::uint64_t kMaxValueBits = std::uint64_t(1) << 28;

inline std::uint64_t bit_length(const BigInt& x) {
    return x.is_zero() ? 0 : boost::multiprecision::msb(abs_of(x)) + 1;
}

/// base^exp for exp >= 0, guarded against astronomically large results.
inline BigInt big_pow(const BigInt& base, const BigInt& exp) {
    if (exp < 0) throw internal_error("NegativeExponent", "big_pow requires exp >= 0");
    if (exp.is_zero()) return 1;
    if (base.is_zero()) return 0;
    if (base == 1) return 1;
    if (base == -1) return (exp % 2 == 0) ? BigInt(1) : BigInt(-1);

    // Result needs roughly exp * bit_length(base) bits.
    BigInt estimated = exp * static_cast<std::int64_t>(bit_length(base));
    if (estimated > kMaxValueBits)
        throw internal_error("EvaluationTooLarge",
                             "power result would exceed the exact-size budget");

    if (base == 2) return BigInt(1) << static_cast<std::uint64_t>(exp);
    if (base == -2) {
        BigInt r = BigInt(1) << static_cast<std::uint64_t>(exp);
        return (exp % 2 == 0) ? r : -r;
    }

    BigInt result = 1;
    BigInt b = base;
    BigInt e = exp;
    while (!e.is_zero()) {
        if (boost::multiprecision::bit_test(e, 0)) result *= b;
        e >>= 1;
        if (!e.is_zero()) b *= b;
    }
    return result;
}

/// Removes every factor p from x and returns the multiplicity removed.
/// Binary lifting keeps deep valuations (x = p^1000000 * u) near-linear.
inline std::uint64_t remove_factor(BigInt& x, std::int64_t p) {
    if (x.is_zero() || x % p != 0) return 0;
    std::uint64_t v = 0;
    // Cheap pass first; typical valuations are tiny.
    for (int i = 0; i < 8 && x % p == 0; ++i) {
        x /= p;
        ++v;
    }
    if (x % p != 0) return v;
    std::vector<BigInt> chain{BigInt(p)};
    while (bit_length(chain.back()) * 2 <= bit_length(x) + 1)
        chain.push_back(chain.back() * chain.back());
    for (std::size_t i = chain.size(); i-- > 0;) {
        while (x % chain[i] == 0) {
            x /= chain[i];
            v += std::uint64_t(1) << i;
        }
    }
    return v;
}

/// floor(a / b) for b > 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b) != 0 && a.sign() < 0) --q;
    return q;
}

/// ceil(a / b) for b > 0.
inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b) != 0 && a.sign() > 0) ++q;
    return q;
}

inline bool is_small_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace ordlim
