#pragma once

#include "ineqcert/bv.hpp"
#include "ineqcert/expr.hpp"
#include "ineqcert/piecewise.hpp"

#include <string_view>

namespace ineqcert {

enum class Rigor { Exact, IntervalEnclosure, Sampled };

std::string_view to_string(Rigor r);
/// The weaker of two rigor levels.
Rigor weakest(Rigor x, Rigor y);

/// Certified bounds lo <= f^(k) <= hi. `tight` is set when lo and hi are attained values
/// (every extremum landed on a rational point); otherwise they are outward enclosures.
struct RangeBound {
    Rational lo;
    Rational hi;
    Rigor rigor = Rigor::Exact;
    bool tight = true;

    Rational width() const { return hi - lo; }
    Rational median() const { return (lo + hi) / 2; }
    Rational sup_abs() const;
    bool contains(const RangeBound& inner) const { return lo <= inner.lo && inner.hi <= hi; }
};

/// Range of f^(k) over the closed pieces meeting I, one-sided at breakpoints.
RangeBound derivative_range(const PiecewisePoly& f, unsigned k, const Interval& I);
RangeBound derivative_range(const PiecewisePoly& f, unsigned k);

/// Exact check that lo <= f^(k) <= hi on every piece (sign analysis at isolated roots).
bool range_contains(const PiecewisePoly& f, unsigned k, const Rational& lo, const Rational& hi);

Rational integrate_exact(const PiecewisePoly& f, const Interval& I);
Rational integrate_exact(const PiecewisePoly& f);

/// max(|lo|, |hi|) of derivative_range; an upper bound on ess sup |f^(k)|.
Rational sup_norm(const PiecewisePoly& f, unsigned k, const Interval& I);
Rational sup_norm(const PiecewisePoly& f, unsigned k = 0);

/// Enclosure of the integral of |f - shift| over the span; a point when every sign change is rational.
RationalBounds integrate_abs(const PiecewisePoly& f, const Rational& shift = Rational(0));

/// Integral of |base'| plus the jump contributions; an enclosure (exact when the extrema of the
/// base are rational).
RationalBounds total_variation(const BVFunction& u);

/// Integral of f with respect to u. Throws DiscontinuousAtJump if f jumps where u does.
Rational stieltjes_integral(const PiecewisePoly& f, const BVFunction& u);

/// Interval enclosure of the range of e^(k) over I by adaptive bisection: levels are refined
/// until the enclosure width changes by less than 1e-3 relative, or depth 20.
RangeBound range_enclosure(const Expr& e, unsigned k, const Interval& I);

/// Min and max of e^(k) over `samples` uniform points; not rigorous.
RangeBound sampled_range(const Expr& e, unsigned k, const Interval& I, unsigned samples = 10000);

} // namespace ineqcert
