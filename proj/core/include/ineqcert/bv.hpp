#pragma once

#include "ineqcert/piecewise.hpp"

#include <vector>

namespace ineqcert {

/// Values of u around a location t: the left limit, u(t) itself, and the right limit.
/// `left` is meaningless at a and `right` at b.
struct JumpRecord {
    Rational t;
    Rational left;
    Rational point;
    Rational right;

    friend bool operator==(const JumpRecord&, const JumpRecord&) = default;
};

/// Bounded-variation function: a piecewise polynomial base plus finitely many records that
/// override the value at their location. Discontinuities of the base without a record get one
/// automatically, with the point value taken from the base.
class BVFunction {
public:
    BVFunction(PiecewisePoly base, std::vector<JumpRecord> jumps);
    explicit BVFunction(PiecewisePoly base) : BVFunction(std::move(base), {}) {}

    const PiecewisePoly& base() const { return base_; }
    /// All records, including the automatic ones, sorted by location.
    const std::vector<JumpRecord>& jumps() const { return jumps_; }
    /// Only the records given at construction.
    const std::vector<JumpRecord>& explicit_jumps() const { return explicit_; }
    Interval span() const { return base_.span(); }

    Rational operator()(const Rational& x) const;
    Rational at_a() const { return (*this)(span().a()); }
    Rational at_b() const { return (*this)(span().b()); }

    /// Stieltjes mass of the record: right - left inside, right - point at a, point - left at b.
    Rational mass(const JumpRecord& j) const;
    /// Variation contributed by the record.
    Rational variation(const JumpRecord& j) const;

private:
    PiecewisePoly base_;
    std::vector<JumpRecord> explicit_;
    std::vector<JumpRecord> jumps_;
};

} // namespace ineqcert
