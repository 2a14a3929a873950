#pragma once

#include "ineqcert/rational.hpp"

#include <cmath>
#include <limits>

namespace ineqcert {

/// Closed double-precision interval with outward rounding. Every arithmetic result is widened
/// by one ulp per endpoint, and by two for the libm elementary functions, so the enclosure
/// property survives round-to-nearest evaluation.
class RealInterval {
public:
    RealInterval() = default;
    RealInterval(double x) : lo_(x), hi_(x) {} // NOLINT: implicit point interval
    RealInterval(double lo, double hi);

    static RealInterval enclose(const Rational& q) { return {round_down(q), round_up(q)}; }
    static RealInterval entire() {
        return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double width() const { return hi_ - lo_; }
    double mid() const { return lo_ + (hi_ - lo_) / 2; }
    double mag() const { return std::fmax(std::fabs(lo_), std::fabs(hi_)); }
    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains_zero() const { return lo_ <= 0 && 0 <= hi_; }
    bool is_point() const { return lo_ == hi_; }

    friend RealInterval operator+(const RealInterval& a, const RealInterval& b);
    friend RealInterval operator-(const RealInterval& a, const RealInterval& b);
    friend RealInterval operator*(const RealInterval& a, const RealInterval& b);
    /// Throws DomainError when the divisor contains zero.
    friend RealInterval operator/(const RealInterval& a, const RealInterval& b);
    friend RealInterval operator-(const RealInterval& a) { return {-a.hi_, -a.lo_}; }

    RealInterval& operator+=(const RealInterval& b) { return *this = *this + b; }

    friend RealInterval hull(const RealInterval& a, const RealInterval& b) {
        return {std::fmin(a.lo_, b.lo_), std::fmax(a.hi_, b.hi_)};
    }

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

RealInterval sin(const RealInterval& x);
RealInterval cos(const RealInterval& x);
RealInterval exp(const RealInterval& x);
RealInterval log(const RealInterval& x);
RealInterval sqrt(const RealInterval& x);
RealInterval abs(const RealInterval& x);
RealInterval pow(const RealInterval& x, int n);

double add_up(double a, double b);
double mul_up(double a, double b);

} // namespace ineqcert
