#pragma once

#include "ineqcert/bv.hpp"
#include "ineqcert/expr.hpp"
#include "ineqcert/piecewise.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ineqcert {

/// A function on [a, b]: exact piecewise polynomial, or an expression evaluated in floating point.
using Function = std::variant<PiecewisePoly, Expr>;

inline bool is_exact(const Function& f) { return std::holds_alternative<PiecewisePoly>(f); }

/// Parses `pw[...]` literals and expressions. Polynomial expressions are lowered to exact
/// piecewise form on I; a literal's span must equal I.
Function parse_function(std::string_view text, const Interval& I);
BVFunction parse_integrator(std::string_view text, const Interval& I);

std::string serialize(const Function& f);

double eval(const Function& f, double x);
/// k-th derivative at x (the owning piece for piecewise input).
double eval_derivative(const Function& f, unsigned k, double x);
/// Interior breakpoints, where integrands may have kinks.
std::vector<Rational> kinks(const Function& f);

/// Adaptive Gauss-Kronrod (61 points) on each sub-interval between `breaks` (double precision).
double integrate_float(const std::function<double(double)>& g, const Interval& I, std::vector<Rational> breaks = {});

} // namespace ineqcert
