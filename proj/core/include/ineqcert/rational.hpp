#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ineqcert {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "-7", "0.125" or "2.5e-3". Decimal literals convert by their digits, so
/// "0.1" is exactly 1/10.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Shortest decimal that round-trips the double.
std::string to_decimal(double value);

double to_double(const Rational& q);  // nearest
double round_down(const Rational& q); // largest double <= q
double round_up(const Rational& q);   // smallest double >= q
Rational from_double(double value);   // exact

Rational factorial(unsigned n);
Rational power(const Rational& base, unsigned exponent);

int sign(const Rational& q);

/// The rational with the smallest denominator in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Closed rational interval lo <= hi; a point when lo == hi.
struct RationalBounds {
    Rational lo;
    Rational hi;

    static RationalBounds point(const Rational& q) { return {q, q}; }
    bool is_point() const { return lo == hi; }
};

RationalBounds operator+(const RationalBounds& x, const RationalBounds& y);
RationalBounds operator-(const RationalBounds& x, const RationalBounds& y);
RationalBounds operator*(const RationalBounds& x, const RationalBounds& y);
RationalBounds operator*(const Rational& s, const RationalBounds& x);

} // namespace ineqcert
