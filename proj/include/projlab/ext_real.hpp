#pragma once

#include <limits>

namespace projlab {

/// A real value extended by a -infinity tag. Entropy formulas branch into a
/// "minus infinity" case, and the tag must survive sums and scalar multiples
/// without ever comparing equal to an ordinary float.
class ExtReal {
public:
    ExtReal() : value_(0.0), finite_(true) {}
    ExtReal(double v) : value_(v), finite_(true) {}  // NOLINT(google-explicit-constructor)

    static ExtReal neg_inf() {
        ExtReal r;
        r.finite_ = false;
        return r;
    }

    bool is_finite() const { return finite_; }

    /// Finite value; only meaningful when is_finite().
    double value() const { return value_; }

    /// Collapse to a double, mapping the tag to -inf (for printing/compares).
    double as_double() const {
        return finite_ ? value_ : -std::numeric_limits<double>::infinity();
    }

    friend ExtReal operator+(ExtReal a, ExtReal b) {
        if (!a.finite_ || !b.finite_) return neg_inf();
        return ExtReal(a.value_ + b.value_);
    }
    friend ExtReal operator-(ExtReal a, double b) {
        if (!a.finite_) return neg_inf();
        return ExtReal(a.value_ - b);
    }
    /// Scaling by a nonnegative factor (the only use entropy formulas need).
    friend ExtReal operator*(double c, ExtReal a) {
        if (!a.finite_) return neg_inf();
        return ExtReal(c * a.value_);
    }
    ExtReal& operator+=(ExtReal b) { return *this = *this + b; }

private:
    double value_;
    bool finite_;
};

}  // namespace projlab
