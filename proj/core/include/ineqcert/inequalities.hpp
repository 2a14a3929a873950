#pragma once

#include "ineqcert/function.hpp"
#include "ineqcert/measure.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ineqcert {

enum class InequalityId {
    zero_mean,
    gruss_mean,
    gruss,
    stieltjes,
    stieltjes_weighted,
    gruss_stieltjes,
    ostrowski,
    ostrowski_pert,
    trapezoid,
    trapezoid_pert,
    ogruss,
    ogruss_pert,
    cheby,
    interior_n,
    interior_n_pert,
    boundary_n,
    boundary_n_pert,
};

const std::array<InequalityId, 17>& all_inequalities();
std::string_view to_string(InequalityId id);
/// Throws UnknownInequality.
InequalityId parse_inequality_id(std::string_view text);
bool is_perturbed(InequalityId id);
/// ostrowski_pert -> ostrowski, etc.; identity for classic ids.
InequalityId classic_form(InequalityId id);

enum class NumericMode { Exact, Float };
std::string_view to_string(NumericMode m);

/// A double for display plus, on the exact path, the exact rational value.
struct Number {
    double value = 0.0;
    std::optional<Rational> exact;

    static Number of(const Rational& q) { return {to_double(q), q}; }
    static Number of(double v) { return {v, std::nullopt}; }
};

struct NamedRange {
    std::string name; // "f", "f'", "g", "f^(n)", ...
    RangeBound range;
};

struct BoundReport {
    InequalityId id = InequalityId::zero_mean;
    Number lhs;
    Number rhs;
    Number ratio;        // lhs / rhs, with 0/0 defined as 0
    Number perturbation; // the term subtracted inside |.|; 0 for classic forms
    NumericMode mode = NumericMode::Exact;
    Rigor rigor = Rigor::Exact;
    /// False when the rhs was built from an outward enclosure (irrational extrema or roots),
    /// in which case it is a certified upper bound of the printed right-hand side.
    bool rhs_exact = true;
    Rational a;
    Rational b;
    std::optional<Rational> x;
    std::optional<unsigned> n;
    std::vector<NamedRange> ranges;
    std::vector<std::string> warnings;

    /// Exact comparison on the exact path; lhs <= rhs + 1e-9 max(1, rhs) in float mode.
    bool holds() const;
};

/// p with p^(n) == 1: x^n/n! plus lower-order terms.
class ShiftPolynomial {
public:
    explicit ShiftPolynomial(unsigned n, std::vector<Rational> lower = {});

    unsigned n() const { return n_; }
    Polynomial polynomial() const;
    /// The monic member of the class, n! times polynomial().
    Polynomial monic() const;

private:
    unsigned n_;
    std::vector<Rational> lower_;
};

/// g - ((r.lo + r.hi)/2) p, whose n-th derivative has sup-norm at most (r.hi - r.lo)/2.
PiecewisePoly median_shift(const PiecewisePoly& g, unsigned n, const RangeBound& r, const ShiftPolynomial& p);
Expr median_shift(const Expr& g, unsigned n, const RangeBound& r, const ShiftPolynomial& p);

/// Everything an evaluation may need; which fields are read depends on the id.
struct BoundInput {
    InequalityId id = InequalityId::zero_mean;
    Interval interval{Rational(0), Rational(1)};
    std::optional<Function> f;
    std::optional<Function> g;
    std::optional<Function> l;
    std::optional<BVFunction> u;
    std::optional<Rational> x;
    unsigned n = 1;
    /// Hypothesis range for f, f' or f^(n) (whichever the inequality bounds); computed when absent.
    std::optional<RangeBound> range;
    /// Range of g (gruss, ogruss) or g' (cheby); computed when absent.
    std::optional<RangeBound> range_g;
};

/// Evaluates both sides. Exact mode whenever every supplied function is piecewise polynomial.
BoundReport evaluate(const BoundInput& input);

// Direct entry points (exact path).
BoundReport bound_zero_mean(const PiecewisePoly& f, const PiecewisePoly& l, std::optional<RangeBound> r = {});
BoundReport bound_gruss_mean(const PiecewisePoly& f, const PiecewisePoly& g, std::optional<RangeBound> r = {});
BoundReport bound_gruss_classic(const PiecewisePoly& f, const PiecewisePoly& g, std::optional<RangeBound> rf = {},
                                std::optional<RangeBound> rg = {});
BoundReport bound_stieltjes(const PiecewisePoly& f, const BVFunction& u, std::optional<RangeBound> r = {},
                            const std::optional<PiecewisePoly>& l = {});
BoundReport bound_gruss_stieltjes(const PiecewisePoly& f, const PiecewisePoly& g, const BVFunction& u,
                                  std::optional<RangeBound> r = {});
BoundReport bound_ostrowski(const PiecewisePoly& f, const Rational& x, bool perturbed, std::optional<RangeBound> r = {});
BoundReport bound_trapezoid(const PiecewisePoly& f, const Rational& x, bool perturbed, std::optional<RangeBound> r = {});
BoundReport bound_ostrowski_gruss(const PiecewisePoly& f, const PiecewisePoly& g, bool perturbed,
                                  std::optional<RangeBound> rf_prime = {}, std::optional<RangeBound> rg = {});
BoundReport bound_cheby(const PiecewisePoly& f, const PiecewisePoly& g);
BoundReport bound_interior_nth(const PiecewisePoly& f, const Rational& x, unsigned n, bool perturbed,
                               std::optional<RangeBound> r = {});
BoundReport bound_boundary_nth(const PiecewisePoly& f, const Rational& x, unsigned n, bool perturbed,
                               std::optional<RangeBound> r = {});

/// Peano kernel: (t-a)^n/n! for t <= x, (t-b)^n/n! for t > x.
Rational kernel_Kn(const Rational& x, const Rational& t, unsigned n, const Interval& I);

struct KernelIntegrals {
    Rational signed_integral;   // [(x-a)^(n+1) - (x-b)^(n+1)]/(n+1)!
    Rational absolute_integral; // [(x-a)^(n+1) + (b-x)^(n+1)]/(n+1)!
};
KernelIntegrals kernel_integrals(const Rational& x, unsigned n, const Interval& I);

/// Coefficient of f^(k)(x) in the interior expansion: [(b-x)^(k+1) + (-1)^k (x-a)^(k+1)]/(k+1)!.
Rational interior_weight(const Rational& x, unsigned k, const Interval& I);
/// Coefficients of f^(k)(a) and f^(k)(b) in the boundary expansion.
std::pair<Rational, Rational> boundary_weights(const Rational& x, unsigned k, const Interval& I);

enum class IdentityVariant { interior, boundary };
/// Integral minus (expansion + remainder), all exact; zero for every polynomial f.
Rational identity_residual(const PiecewisePoly& f, const Rational& x, unsigned n, IdentityVariant variant);

} // namespace ineqcert
