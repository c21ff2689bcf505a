#pragma once

#include <string>
#include <variant>

#include "ordlim/maxtimes.hpp"
#include "ordlim/rational.hpp"
#include "ordlim/rational_function.hpp"
#include "ordlim/z1p.hpp"

namespace ordlim {

enum class Kind { rational, z1p, zx, maxtimes };

using Element = std::variant<Rational, Z1p, RationalFn, MaxTimes>;

inline Kind kind_of(const Element& e) {
    switch (e.index()) {
        case 0: return Kind::rational;
        case 1: return Kind::z1p;
        case 2: return Kind::zx;
        default: return Kind::maxtimes;
    }
}

inline std::string poly_to_string(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        BigInt c = p.coeff(static_cast<std::size_t>(k));
        if (c.is_zero()) continue;
        bool first = out.empty();
        bool negative = c.sign() < 0;
        BigInt a = abs_of(c);
        if (!first) out += negative ? "-" : "+";
        else if (negative) out += "-";
        if (k == 0) {
            out += a.str();
        } else {
            if (a != 1) out += a.str() + "*";
            out += "X";
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

/// Canonical text rendering; the same grammar the parser accepts.
inline std::string render(const Element& e) {
    struct V {
        std::string operator()(const Rational& r) const { return r.str(); }
        std::string operator()(const Z1p& z) const { return z.str(); }
        std::string operator()(const RationalFn& f) const {
            if (f.den() == IntPoly(BigInt(1))) return poly_to_string(f.num());
            return "(" + poly_to_string(f.num()) + ")/(" + poly_to_string(f.den()) + ")";
        }
        std::string operator()(const MaxTimes& m) const { return m.str(); }
    };
    return std::visit(V{}, e);
}

} // namespace ordlim
