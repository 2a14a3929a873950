#pragma once

#include "ineqcert/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ineqcert {

/// Dense univariate polynomial with rational coefficients, stored in ascending order.
/// Canonical: no trailing zero coefficients beyond degree 0; the zero polynomial is {0}.
class Polynomial {
public:
    Polynomial() : coeffs_{Rational(0)} {}
    explicit Polynomial(std::vector<Rational> coefficients);

    static Polynomial constant(const Rational& c) { return Polynomial({c}); }
    static Polynomial monomial(const Rational& c, unsigned degree);
    /// (x - c)^n
    static Polynomial shifted_power(const Rational& c, unsigned n);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && sgn(coeffs_[0]) == 0; }
    bool is_constant() const { return coeffs_.size() == 1; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Rational coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
    const Rational& leading() const { return coeffs_.back(); }

    Rational operator()(const Rational& x) const;
    double operator()(double x) const;
    /// Interval Horner evaluation; encloses {p(t) : t in x}.
    RationalBounds operator()(const RationalBounds& x) const;

    Polynomial derivative(unsigned k = 1) const;
    /// Antiderivative with zero constant term.
    Polynomial antiderivative() const;
    Rational integrate(const Rational& lo, const Rational& hi) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Rational& s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// Quotient and remainder of Euclidean division by a nonzero divisor.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
    Polynomial monic() const;

    /// Text in the expression grammar, e.g. "3/2*x^2 - x + 1/4".
    std::string to_string() const;

private:
    void canonicalize();
    std::vector<Rational> coeffs_;
};

Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// p / gcd(p, p'): same distinct roots, all simple.
Polynomial square_free_part(const Polynomial& p);

/// A real root known either exactly (lo == hi) or inside the open bracket (lo, hi),
/// whose endpoints are not roots and which contains no other root.
struct RealRoot {
    Rational lo;
    Rational hi;
    bool exact() const { return lo == hi; }
};

/// All distinct real roots of p in the closed interval [lo, hi], sorted and isolated by
/// Sturm sequences. Irrational roots are bracketed to width at most (hi - lo) * 2^-50.
/// p must be nonzero.
std::vector<RealRoot> real_roots(const Polynomial& p, const Rational& lo, const Rational& hi);

/// Certified enclosure of {p(t) : lo <= t <= hi}. Exact (the true min and max) when every
/// interior extremum sits at a rational point; otherwise outward by at most the bracket slack.
/// `tight`, when given, reports whether both bounds are attained values.
RationalBounds polynomial_range(const Polynomial& p, const Rational& lo, const Rational& hi, bool* tight = nullptr);

/// Certified enclosure of the integral of |p| over [lo, hi], splitting at the real roots of p.
RationalBounds integrate_abs(const Polynomial& p, const Rational& lo, const Rational& hi);

} // namespace ineqcert
