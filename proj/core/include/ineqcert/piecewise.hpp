#pragma once

#include "ineqcert/polynomial.hpp"
#include "ineqcert/rational.hpp"

#include <string>
#include <vector>

namespace ineqcert {

/// Closed interval [a, b] with rational endpoints, a < b.
class Interval {
public:
    Interval(Rational a, Rational b);

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    Rational length() const { return b_ - a_; }
    Rational mid() const { return (a_ + b_) / 2; }
    bool contains(const Rational& x) const { return a_ <= x && x <= b_; }
    bool contains(const Interval& other) const { return a_ <= other.a_ && other.b_ <= b_; }

    friend bool operator==(const Interval& l, const Interval& r) { return l.a_ == r.a_ && l.b_ == r.b_; }

private:
    Rational a_;
    Rational b_;
};

/// Piecewise polynomial with rational breakpoints t0 < t1 < ... < tK; piece i lives on
/// [t_i, t_{i+1}]. At an interior breakpoint the value is the left piece's (so a step
/// "-1 on [0,1/2], 1 on (1/2,1]" is literal). Continuity is computed, never assumed.
class PiecewisePoly {
public:
    PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Polynomial> pieces);
    PiecewisePoly(const Interval& span, Polynomial p);

    Interval span() const { return {breaks_.front(), breaks_.back()}; }
    std::size_t piece_count() const { return pieces_.size(); }
    const std::vector<Rational>& breakpoints() const { return breaks_; }
    const std::vector<Polynomial>& pieces() const { return pieces_; }
    const Polynomial& piece(std::size_t i) const { return pieces_[i]; }
    Interval piece_interval(std::size_t i) const { return {breaks_[i], breaks_[i + 1]}; }
    int degree() const;

    /// Index of the piece whose value is used at x (left piece at interior breakpoints).
    std::size_t locate(const Rational& x) const;

    Rational operator()(const Rational& x) const;
    double operator()(double x) const;
    Rational left_limit(const Rational& x) const;  // requires x > a
    Rational right_limit(const Rational& x) const; // requires x < b
    /// k-th derivative at x taken from the piece that owns x.
    Rational derivative_at(unsigned k, const Rational& x) const;

    /// Whether f and its derivatives up to `order` agree across every interior breakpoint.
    bool is_continuous(unsigned order = 0) const;

    PiecewisePoly derivative(unsigned k = 1) const;
    PiecewisePoly restrict(const Interval& I) const;
    /// Same function with extra breakpoints inserted.
    PiecewisePoly refine(const std::vector<Rational>& points) const;
    /// Removes breakpoints where the neighbouring pieces are the same polynomial.
    PiecewisePoly simplified() const;

    friend PiecewisePoly operator+(const PiecewisePoly& f, const PiecewisePoly& g);
    friend PiecewisePoly operator-(const PiecewisePoly& f, const PiecewisePoly& g);
    friend PiecewisePoly operator*(const PiecewisePoly& f, const PiecewisePoly& g);
    friend PiecewisePoly operator*(const Rational& s, const PiecewisePoly& f);
    friend PiecewisePoly operator+(const PiecewisePoly& f, const Polynomial& p);
    friend PiecewisePoly operator-(const PiecewisePoly& f, const Polynomial& p);
    friend bool operator==(const PiecewisePoly& f, const PiecewisePoly& g) {
        return f.breaks_ == g.breaks_ && f.pieces_ == g.pieces_;
    }

private:
    std::vector<Rational> breaks_;
    std::vector<Polynomial> pieces_;
};

/// Both functions rewritten on the union of their breakpoints; spans must agree.
std::pair<PiecewisePoly, PiecewisePoly> common_refinement(const PiecewisePoly& f, const PiecewisePoly& g);

} // namespace ineqcert
