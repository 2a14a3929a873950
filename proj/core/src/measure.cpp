#include "ineqcert/measure.hpp"

#include "ineqcert/errors.hpp"

#include <algorithm>
#include <optional>

namespace ineqcert {

std::string_view to_string(Rigor r) {
    switch (r) {
    case Rigor::Exact: return "exact";
    case Rigor::IntervalEnclosure: return "interval";
    case Rigor::Sampled: return "sampled";
    }
    return "sampled";
}

Rigor weakest(Rigor x, Rigor y) { return static_cast<int>(x) > static_cast<int>(y) ? x : y; }

Rational RangeBound::sup_abs() const {
    Rational l = abs(lo);
    Rational h = abs(hi);
    return l > h ? l : h;
}

RangeBound derivative_range(const PiecewisePoly& f, unsigned k, const Interval& I) {
    if (I.b() <= f.span().a() || I.a() >= f.span().b() || !f.span().contains(I))
        throw OutOfInterval("range interval not within the function's span");
    std::optional<RangeBound> out;
    for (std::size_t i = 0; i < f.piece_count(); ++i) {
        Rational lo = std::max(f.breakpoints()[i], I.a());
        Rational hi = std::min(f.breakpoints()[i + 1], I.b());
        if (!(lo < hi)) continue;
        bool tight = true;
        RationalBounds r = polynomial_range(f.piece(i).derivative(k), lo, hi, &tight);
        if (!out) {
            out = RangeBound{r.lo, r.hi, Rigor::Exact, tight};
            continue;
        }
        // tightness follows whichever piece supplies each bound
        if (r.lo < out->lo) out->lo = r.lo;
        if (r.hi > out->hi) out->hi = r.hi;
        out->tight = out->tight && tight;
    }
    return *out;
}

RangeBound derivative_range(const PiecewisePoly& f, unsigned k) { return derivative_range(f, k, f.span()); }

namespace {

// q >= 0 on [s, t]: q is sampled once inside every gap between consecutive isolated roots.
bool nonnegative(const Polynomial& q, const Rational& s, const Rational& t) {
    if (q.is_zero()) return true;
    if (sgn(q(s)) < 0 || sgn(q(t)) < 0) return false;
    Rational prev = s;
    for (const auto& r : real_roots(q, s, t)) {
        Rational sample = prev < r.lo ? Rational((prev + r.lo) / 2) : prev;
        if (sgn(q(sample)) < 0) return false;
        prev = r.hi;
    }
    if (prev < t && sgn(q((prev + t) / 2)) < 0) return false;
    return true;
}

} // namespace

bool range_contains(const PiecewisePoly& f, unsigned k, const Rational& lo, const Rational& hi) {
    for (std::size_t i = 0; i < f.piece_count(); ++i) {
        Polynomial d = f.piece(i).derivative(k);
        const Rational& s = f.breakpoints()[i];
        const Rational& t = f.breakpoints()[i + 1];
        if (!nonnegative(d - Polynomial::constant(lo), s, t)) return false;
        if (!nonnegative(Polynomial::constant(hi) - d, s, t)) return false;
    }
    return true;
}

Rational integrate_exact(const PiecewisePoly& f, const Interval& I) {
    if (!f.span().contains(I)) throw OutOfInterval("integration interval not within the function's span");
    Rational total = 0;
    for (std::size_t i = 0; i < f.piece_count(); ++i) {
        Rational lo = std::max(f.breakpoints()[i], I.a());
        Rational hi = std::min(f.breakpoints()[i + 1], I.b());
        if (lo < hi) total += f.piece(i).integrate(lo, hi);
    }
    return total;
}

Rational integrate_exact(const PiecewisePoly& f) { return integrate_exact(f, f.span()); }

Rational sup_norm(const PiecewisePoly& f, unsigned k, const Interval& I) { return derivative_range(f, k, I).sup_abs(); }

Rational sup_norm(const PiecewisePoly& f, unsigned k) { return sup_norm(f, k, f.span()); }

RationalBounds integrate_abs(const PiecewisePoly& f, const Rational& shift) {
    RationalBounds total = RationalBounds::point(Rational(0));
    Polynomial s = Polynomial::constant(shift);
    for (std::size_t i = 0; i < f.piece_count(); ++i)
        total = total + integrate_abs(f.piece(i) - s, f.breakpoints()[i], f.breakpoints()[i + 1]);
    return total;
}

RationalBounds total_variation(const BVFunction& u) {
    RationalBounds total = integrate_abs(u.base().derivative());
    Rational jumps = 0;
    for (const auto& j : u.jumps()) jumps += u.variation(j);
    return {total.lo + jumps, total.hi + jumps};
}

Rational stieltjes_integral(const PiecewisePoly& f, const BVFunction& u) {
    if (!(f.span() == u.span())) throw PreconditionError("integrand and integrator live on different intervals");
    Rational total = integrate_exact(f * u.base().derivative());
    for (const auto& j : u.jumps()) {
        bool interior = j.t > u.span().a() && j.t < u.span().b();
        bool trivial = j.left == j.point && j.point == j.right;
        if (interior && !trivial && f.left_limit(j.t) != f.right_limit(j.t))
            throw DiscontinuousAtJump("integrand jumps at " + to_string(j.t) + " where the integrator jumps");
        Rational m = u.mass(j);
        if (sgn(m) != 0) total += f(j.t) * m;
    }
    return total;
}

namespace {

struct Cell {
    double lo;
    double hi;
    std::optional<RealInterval> enclosure;
};

std::optional<RealInterval> try_enclose(const Expr& d, double lo, double hi) {
    try {
        return eval_interval(d, RealInterval(lo, hi));
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

} // namespace

RangeBound range_enclosure(const Expr& e, unsigned k, const Interval& I) {
    const Expr d = differentiate(e, k);
    const double a = round_down(I.a());
    const double b = round_up(I.b());

    // Certified values at sample points; cells whose enclosure stays inside them can be dropped.
    double sample_lo = std::numeric_limits<double>::infinity();
    double sample_hi = -std::numeric_limits<double>::infinity();
    auto sample = [&](double t) {
        if (auto v = try_enclose(d, t, t)) {
            sample_lo = std::min(sample_lo, v->lo());
            sample_hi = std::max(sample_hi, v->hi());
        }
    };
    sample(a);
    sample(b);

    std::vector<Cell> cells{{a, b, try_enclose(d, a, b)}};
    std::optional<double> previous_width;
    constexpr int kMaxDepth = 20;
    constexpr std::size_t kMaxCells = 1u << 14;
    RealInterval result;
    for (int depth = 0;; ++depth) {
        bool unresolved = false;
        double lo = sample_lo;
        double hi = sample_hi;
        for (const auto& c : cells) {
            if (!c.enclosure) {
                unresolved = true;
                continue;
            }
            lo = std::min(lo, c.enclosure->lo());
            hi = std::max(hi, c.enclosure->hi());
        }
        if (!unresolved) {
            result = RealInterval(lo, hi);
            double width = hi - lo;
            if (previous_width && std::fabs(*previous_width - width) <= 1e-3 * width) break;
            if (previous_width && width == *previous_width) break;
            previous_width = width;
        }
        if (depth == kMaxDepth || cells.size() * 2 > kMaxCells) {
            if (unresolved) throw DomainError("range enclosure reaches a singularity of '" + serialize(d) + "'");
            break;
        }

        std::vector<Cell> next;
        next.reserve(cells.size() * 2);
        for (const auto& c : cells) {
            if (c.enclosure && c.enclosure->lo() >= sample_lo && c.enclosure->hi() <= sample_hi) continue;
            double m = c.lo + (c.hi - c.lo) / 2;
            if (!(m > c.lo && m < c.hi)) {
                next.push_back(c);
                continue;
            }
            sample(m);
            next.push_back({c.lo, m, try_enclose(d, c.lo, m)});
            next.push_back({m, c.hi, try_enclose(d, m, c.hi)});
        }
        cells = std::move(next);
    }
    if (!std::isfinite(result.lo()) || !std::isfinite(result.hi()))
        throw DomainError("range enclosure of '" + serialize(d) + "' is unbounded");
    return {from_double(result.lo()), from_double(result.hi()), Rigor::IntervalEnclosure, false};
}

RangeBound sampled_range(const Expr& e, unsigned k, const Interval& I, unsigned samples) {
    const Expr d = differentiate(e, k);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    const unsigned n = std::max(samples, 2u);
    for (unsigned i = 0; i < n; ++i) {
        Rational t = I.a() + I.length() * Rational(i) / Rational(n - 1);
        double v = eval(d, to_double(t));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("sampled range is unbounded");
    return {from_double(lo), from_double(hi), Rigor::Sampled, false};
}

} // namespace ineqcert
