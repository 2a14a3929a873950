#include "ineqcert/function.hpp"

#include "ineqcert/errors.hpp"
#include "ineqcert/literal.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cctype>

namespace ineqcert {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

void require_span(const Interval& span, const Interval& I) {
    if (!(span == I))
        throw PreconditionError("literal is defined on [" + to_string(span.a()) + ", " + to_string(span.b()) +
                                "] but the interval is [" + to_string(I.a()) + ", " + to_string(I.b()) + "]");
}

} // namespace

Function parse_function(std::string_view text, const Interval& I) {
    text = trim(text);
    if (text.substr(0, 3) == "pw[") {
        PiecewisePoly f = parse_piecewise(text);
        require_span(f.span(), I);
        return f;
    }
    Expr e = parse(text);
    try {
        return lower_to_poly(e, I);
    } catch (const NotPolynomial&) {
        return e;
    }
}

BVFunction parse_integrator(std::string_view text, const Interval& I) {
    text = trim(text);
    if (text.substr(0, 3) == "bv[") {
        BVFunction u = parse_bv(text);
        require_span(u.span(), I);
        return u;
    }
    Function f = parse_function(text, I);
    if (auto* pw = std::get_if<PiecewisePoly>(&f)) return BVFunction(*pw);
    throw PreconditionError("an integrator must be a bv literal, a pw literal or a polynomial");
}

std::string serialize(const Function& f) {
    return std::visit([](const auto& g) { return serialize(g); }, f);
}

double eval(const Function& f, double x) {
    if (auto* pw = std::get_if<PiecewisePoly>(&f)) return (*pw)(x);
    return eval(std::get<Expr>(f), x);
}

double eval_derivative(const Function& f, unsigned k, double x) {
    if (auto* pw = std::get_if<PiecewisePoly>(&f)) {
        Rational q = from_double(x);
        q = std::clamp(q, pw->span().a(), pw->span().b());
        return pw->piece(pw->locate(q)).derivative(k)(x);
    }
    return eval(differentiate(std::get<Expr>(f), k), x);
}

std::vector<Rational> kinks(const Function& f) {
    if (auto* pw = std::get_if<PiecewisePoly>(&f)) {
        const auto& b = pw->breakpoints();
        return {b.begin() + 1, b.end() - 1};
    }
    return {};
}

double integrate_float(const std::function<double(double)>& g, const Interval& I, std::vector<Rational> breaks) {
    breaks.push_back(I.a());
    breaks.push_back(I.b());
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i] < I.a() || breaks[i + 1] > I.b()) continue;
        double lo = to_double(breaks[i]);
        double hi = to_double(breaks[i + 1]);
        if (!(lo < hi)) continue;
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, lo, hi, 15, 1e-14);
    }
    return total;
}

} // namespace ineqcert
