#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ordlim/errors.hpp"
#include "ordlim/rational.hpp"

namespace ordlim {

/// Element of the max-times semiring G0 = G u {0} over the totally ordered
/// group G = (Q+, *). "Addition" is max, multiplication is the group
/// operation, the adjoined bottom 0 is absorbing and below every group
/// element.
class MaxTimes {
  public:
    MaxTimes() = default; // bottom

    static MaxTimes bottom() { return MaxTimes(); }

    explicit MaxTimes(Rational v) : v_(std::move(v)) {
        if (v_ && v_->sign() <= 0)
            throw precondition_error("WrongStructure",
                                     "max-times group elements must be positive rationals");
    }

    bool is_bottom() const noexcept { return !v_.has_value(); }
    const Rational& value() const {
        if (is_bottom()) throw internal_error("Bottom", "value() on the adjoined zero");
        return *v_;
    }

    friend MaxTimes operator+(const MaxTimes& a, const MaxTimes& b) { // max
        return a.compare(b) >= 0 ? a : b;
    }
    friend MaxTimes operator*(const MaxTimes& a, const MaxTimes& b) {
        if (a.is_bottom() || b.is_bottom()) return bottom();
        return MaxTimes(*a.v_ * *b.v_);
    }

    MaxTimes inverse() const {
        if (is_bottom()) throw precondition_error("DivisionByZero", "inverse of the adjoined zero");
        return MaxTimes(v_->inverse());
    }

    MaxTimes pow(const BigInt& e) const {
        if (is_bottom()) {
            if (e.is_zero()) return MaxTimes(Rational(1));
            return bottom();
        }
        return MaxTimes(v_->pow(e));
    }

    int compare(const MaxTimes& o) const {
        if (is_bottom() && o.is_bottom()) return 0;
        if (is_bottom()) return -1;
        if (o.is_bottom()) return 1;
        return v_->compare(*o.v_);
    }

    bool operator==(const MaxTimes& o) const { return compare(o) == 0; }
    bool operator!=(const MaxTimes& o) const { return !(*this == o); }

    std::string str() const { return is_bottom() ? "0" : v_->str(); }

  private:
    std::optional<Rational> v_;
};

} // namespace ordlim
