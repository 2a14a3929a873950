#pragma once

#include "ineqcert/function.hpp"
#include "ineqcert/inequalities.hpp"
#include "ineqcert/measure.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace ineqcert {

enum class QuadratureRule { pmid, interior_n, boundary_n };

std::string_view to_string(QuadratureRule r);
QuadratureRule parse_rule(std::string_view text);

/// a = x0 < x1 < ... < xN = b.
class Partition {
public:
    explicit Partition(std::vector<Rational> points);
    static Partition uniform(const Interval& I, unsigned cells);

    const std::vector<Rational>& points() const { return points_; }
    std::size_t cells() const { return points_.size() - 1; }
    Interval cell(std::size_t i) const { return {points_[i], points_[i + 1]}; }

private:
    std::vector<Rational> points_;
};

struct CellResult {
    Rational lo;
    Rational hi;
    Number estimate;
    Number radius;
    RangeBound range; // bounds the derivative the rule controls on this cell
};

struct CertifiedIntegral {
    Number estimate;
    Number radius;
    std::vector<Rational> partition;
    QuadratureRule rule = QuadratureRule::pmid;
    unsigned n = 1;
    std::vector<CellResult> cells;
    NumericMode mode = NumericMode::Exact;
    Rigor rigor = Rigor::Exact;
    bool converged = true;
    std::vector<std::string> warnings;

    /// Whether `value` lies in [estimate - radius, estimate + radius].
    bool contains(const Rational& value) const;
    bool contains(double value) const;
};

struct QuadratureOptions {
    /// Use sampled (non-rigorous) ranges for expressions; refused unless best_effort is set.
    bool sampled_ranges = false;
    bool best_effort = false;
};

/// Perturbed Ostrowski bound at each cell midpoint: estimate sum h f(mid), radius sum (G-g) h^2/8.
CertifiedIntegral certified_midpoint(const Function& f, const Interval& I, const Partition& P,
                                     const std::optional<std::vector<RangeBound>>& ranges = {},
                                     const QuadratureOptions& options = {});

/// Perturbed n-th degree expansion at each cell midpoint (interior) or from the cell endpoints (boundary).
CertifiedIntegral certified_nth(const Function& f, const Interval& I, const Partition& P, unsigned n,
                                IdentityVariant variant, const std::optional<std::vector<RangeBound>>& ranges = {},
                                const QuadratureOptions& options = {});

CertifiedIntegral certified(const Function& f, const Interval& I, const Partition& P, QuadratureRule rule, unsigned n,
                            const QuadratureOptions& options = {});

/// Bisects the cell with the largest radius (leftmost on ties) until radius <= tol or max_cells.
CertifiedIntegral adaptive_integrate(const Function& f, const Interval& I, double tol, QuadratureRule rule, unsigned n,
                                     std::size_t max_cells, const QuadratureOptions& options = {});

} // namespace ineqcert
