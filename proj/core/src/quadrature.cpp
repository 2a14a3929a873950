#include "ineqcert/quadrature.hpp"

#include "ineqcert/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace ineqcert {

std::string_view to_string(QuadratureRule r) {
    switch (r) {
    case QuadratureRule::pmid: return "pmid";
    case QuadratureRule::interior_n: return "interior_n";
    case QuadratureRule::boundary_n: return "boundary_n";
    }
    return "pmid";
}

QuadratureRule parse_rule(std::string_view text) {
    for (auto r : {QuadratureRule::pmid, QuadratureRule::interior_n, QuadratureRule::boundary_n})
        if (to_string(r) == text) return r;
    throw PreconditionError("unknown rule '" + std::string(text) + "' (expected pmid, interior_n or boundary_n)");
}

Partition::Partition(std::vector<Rational> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw PreconditionError("a partition needs at least one cell");
    for (std::size_t i = 0; i + 1 < points_.size(); ++i)
        if (!(points_[i] < points_[i + 1])) throw PreconditionError("partition points must be strictly increasing");
}

Partition Partition::uniform(const Interval& I, unsigned cells) {
    if (cells == 0) throw PreconditionError("a partition needs at least one cell");
    std::vector<Rational> pts;
    pts.reserve(cells + 1);
    for (unsigned i = 0; i <= cells; ++i) pts.push_back(I.a() + I.length() * Rational(i) / Rational(cells));
    return Partition(std::move(pts));
}

bool CertifiedIntegral::contains(const Rational& value) const {
    if (estimate.exact && radius.exact) return abs(value - *estimate.exact) <= *radius.exact;
    return contains(to_double(value));
}

bool CertifiedIntegral::contains(double value) const {
    if (estimate.exact && radius.exact) return contains(from_double(value));
    return std::fabs(value - estimate.value) <= radius.value;
}

namespace {

struct Spec {
    unsigned n;
    bool boundary;
};

/// Rule-specific weights for one cell with the expansion point at the cell midpoint.
struct CellWeights {
    std::vector<Rational> at_x;          // interior: weights of f^(k)(x)
    std::vector<std::pair<Rational, Rational>> at_ends; // boundary: weights of f^(k)(c), f^(k)(d)
    Rational perturbation_factor;        // multiplies the range median
    Rational radius_factor;              // multiplies the range width
};

CellWeights weights(const Interval& cell, const Spec& s) {
    CellWeights w;
    Rational x = cell.mid();
    for (unsigned k = 0; k < s.n; ++k) {
        if (s.boundary) w.at_ends.push_back(boundary_weights(x, k, cell));
        else w.at_x.push_back(interior_weight(x, k, cell));
    }
    KernelIntegrals K = kernel_integrals(x, s.n, cell);
    Rational sign = (!s.boundary && s.n % 2 == 1) ? Rational(-1) : Rational(1);
    w.perturbation_factor = sign * K.signed_integral;
    w.radius_factor = K.absolute_integral / 2;
    return w;
}

using ExactEnds = std::function<const std::vector<Rational>&(const Rational&)>;
using FloatEnds = std::function<const std::vector<RealInterval>&(const Rational&)>;

CellResult exact_cell(const PiecewisePoly& f, const Interval& cell, const Spec& s, const std::optional<RangeBound>& given,
                      const ExactEnds& ends) {
    PiecewisePoly g = f.restrict(cell);
    RangeBound r;
    if (given) {
        if (!range_contains(g, s.n, given->lo, given->hi))
            throw InvalidRange("supplied range does not contain f^(" + std::to_string(s.n) + ") on [" +
                               to_string(cell.a()) + ", " + to_string(cell.b()) + "]");
        r = *given;
    } else {
        r = derivative_range(g, s.n);
    }
    CellWeights w = weights(cell, s);
    Rational est = 0;
    if (s.boundary) {
        const auto& da = ends(cell.a());
        const auto& db = ends(cell.b());
        for (unsigned k = 0; k < s.n; ++k) est += w.at_ends[k].first * da[k] + w.at_ends[k].second * db[k];
    } else {
        for (unsigned k = 0; k < s.n; ++k) est += w.at_x[k] * g.derivative_at(k, cell.mid());
    }
    est += r.median() * w.perturbation_factor;
    Rational rad = r.width() * w.radius_factor;
    return {cell.a(), cell.b(), Number::of(est), Number::of(rad), r};
}

/// The rule's value is enclosed; its midpoint is the estimate and the half-width joins the radius.
CellResult float_cell(const std::vector<Expr>& derivs, const Interval& cell, const Spec& s,
                     const std::optional<RangeBound>& given, const QuadratureOptions& opt, const FloatEnds& ends) {
    RangeBound r;
    if (given) r = *given;
    else if (opt.sampled_ranges) r = sampled_range(derivs[0], s.n, cell, 1000);
    else r = range_enclosure(derivs[0], s.n, cell);
    CellWeights w = weights(cell, s);
    RealInterval est(0.0);
    if (s.boundary) {
        const auto& da = ends(cell.a());
        const auto& db = ends(cell.b());
        for (unsigned k = 0; k < s.n; ++k)
            est += RealInterval::enclose(w.at_ends[k].first) * da[k] + RealInterval::enclose(w.at_ends[k].second) * db[k];
    } else {
        RealInterval x = RealInterval::enclose(cell.mid());
        for (unsigned k = 0; k < s.n; ++k) est += RealInterval::enclose(w.at_x[k]) * eval_interval(derivs[k], x);
    }
    est += RealInterval::enclose(Rational(r.median() * w.perturbation_factor));
    double rule_radius = round_up(Rational(r.width() * w.radius_factor));
    double mid = est.mid();
    double spread = std::max(add_up(est.hi(), -mid), add_up(mid, -est.lo()));
    double radius = add_up(rule_radius, spread);
    return {cell.a(), cell.b(), Number::of(mid), Number::of(radius), r};
}

class Integrator {
public:
    Integrator(const Function& f, const Interval& I, const Spec& s, const QuadratureOptions& opt)
        : f_(f), I_(I), spec_(s), opt_(opt) {
        if (s.n < 1) throw PreconditionError("the order n must be at least 1");
        if (auto* p = std::get_if<PiecewisePoly>(&f)) {
            if (!(p->span() == I)) throw PreconditionError("f lives on a different interval");
            if (!p->is_continuous(s.n - 1))
                throw DiscontinuityError("f must have continuous derivatives up to order " + std::to_string(s.n - 1));
        } else {
            if (opt.sampled_ranges && !opt.best_effort)
                throw PreconditionError("sampled ranges are not rigorous; set best_effort to use them");
            const Expr& e = std::get<Expr>(f);
            for (unsigned k = 0; k <= s.n; ++k) derivs_.push_back(differentiate(e, k));
        }
    }

    bool exact() const { return derivs_.empty(); }

    CellResult cell(const Interval& c, const std::optional<RangeBound>& given) const {
        if (!I_.contains(c)) throw OutOfInterval("partition outside the interval");
        if (exact()) {
            const auto& f = std::get<PiecewisePoly>(f_);
            return exact_cell(f, c, spec_, given, [&](const Rational& t) -> const std::vector<Rational>& {
                auto [it, fresh] = exact_ends_.try_emplace(t);
                if (fresh)
                    for (unsigned k = 0; k < spec_.n; ++k) it->second.push_back(f.derivative_at(k, t));
                return it->second;
            });
        }
        // derivs_[0] is f itself; the range is taken of its n-th derivative
        return float_cell(derivs_, c, spec_, given, opt_, [&](const Rational& t) -> const std::vector<RealInterval>& {
                   auto [it, fresh] = float_ends_.try_emplace(t);
                   if (fresh)
                       for (unsigned k = 0; k < spec_.n; ++k)
                           it->second.push_back(eval_interval(derivs_[k], RealInterval::enclose(t)));
                   return it->second;
               });
    }

    CertifiedIntegral assemble(std::vector<CellResult> cells, QuadratureRule rule) const {
        CertifiedIntegral out;
        out.rule = rule;
        out.n = spec_.n;
        out.mode = exact() ? NumericMode::Exact : NumericMode::Float;
        out.partition.push_back(cells.front().lo);
        for (const auto& c : cells) out.partition.push_back(c.hi);
        if (exact()) {
            Rational est = 0;
            Rational rad = 0;
            for (const auto& c : cells) {
                est += *c.estimate.exact;
                rad += *c.radius.exact;
            }
            out.estimate = Number::of(est);
            out.radius = Number::of(rad);
        } else {
            // fixed left-to-right order; the sum of midpoints is enclosed and its width added
            RealInterval est(0.0);
            double rad = 0.0;
            for (const auto& c : cells) {
                est += RealInterval(c.estimate.value);
                rad = add_up(rad, c.radius.value);
                out.rigor = weakest(out.rigor, c.range.rigor);
            }
            double mid = est.mid();
            rad = add_up(rad, std::max(add_up(est.hi(), -mid), add_up(mid, -est.lo())));
            out.estimate = Number::of(mid);
            out.radius = Number::of(rad);
            if (out.rigor == Rigor::Sampled) out.warnings.push_back("sampled ranges: the radius is not certified");
        }
        out.cells = std::move(cells);
        return out;
    }

private:
    const Function& f_;
    Interval I_;
    Spec spec_;
    QuadratureOptions opt_;
    std::vector<Expr> derivs_;
    // derivative values at cell endpoints, shared by neighbouring cells (boundary rule)
    mutable std::map<Rational, std::vector<Rational>> exact_ends_;
    mutable std::map<Rational, std::vector<RealInterval>> float_ends_;
};

CertifiedIntegral run(const Function& f, const Interval& I, const Partition& P, const Spec& s, QuadratureRule rule,
                      const std::optional<std::vector<RangeBound>>& ranges, const QuadratureOptions& opt) {
    if (P.points().front() != I.a() || P.points().back() != I.b())
        throw OutOfInterval("partition must start at a and end at b");
    if (ranges && ranges->size() != P.cells()) throw PreconditionError("need one range per cell");
    Integrator integ(f, I, s, opt);
    std::vector<CellResult> cells;
    cells.reserve(P.cells());
    for (std::size_t i = 0; i < P.cells(); ++i)
        cells.push_back(integ.cell(P.cell(i), ranges ? std::optional<RangeBound>((*ranges)[i]) : std::nullopt));
    return integ.assemble(std::move(cells), rule);
}

Spec spec_for(QuadratureRule rule, unsigned n) {
    if (rule == QuadratureRule::pmid) return {1, false};
    return {n, rule == QuadratureRule::boundary_n};
}

bool radius_greater(const CellResult& x, const CellResult& y) {
    if (x.radius.exact && y.radius.exact) return *x.radius.exact > *y.radius.exact;
    return x.radius.value > y.radius.value;
}

} // namespace

CertifiedIntegral certified_midpoint(const Function& f, const Interval& I, const Partition& P,
                                     const std::optional<std::vector<RangeBound>>& ranges, const QuadratureOptions& options) {
    return run(f, I, P, {1, false}, QuadratureRule::pmid, ranges, options);
}

CertifiedIntegral certified_nth(const Function& f, const Interval& I, const Partition& P, unsigned n,
                                IdentityVariant variant, const std::optional<std::vector<RangeBound>>& ranges,
                                const QuadratureOptions& options) {
    bool boundary = variant == IdentityVariant::boundary;
    return run(f, I, P, {n, boundary}, boundary ? QuadratureRule::boundary_n : QuadratureRule::interior_n, ranges,
               options);
}

CertifiedIntegral certified(const Function& f, const Interval& I, const Partition& P, QuadratureRule rule, unsigned n,
                            const QuadratureOptions& options) {
    return run(f, I, P, spec_for(rule, n), rule, std::nullopt, options);
}

CertifiedIntegral adaptive_integrate(const Function& f, const Interval& I, double tol, QuadratureRule rule, unsigned n,
                                     std::size_t max_cells, const QuadratureOptions& options) {
    if (!(tol > 0)) throw PreconditionError("tolerance must be positive");
    if (max_cells < 1) throw PreconditionError("max_cells must be at least 1");
    Integrator integ(f, I, spec_for(rule, n), options);
    std::vector<CellResult> cells{integ.cell(I, std::nullopt)};
    auto total = [&] {
        if (integ.exact()) {
            Rational r = 0;
            for (const auto& c : cells) r += *c.radius.exact;
            return to_double(r);
        }
        double r = 0;
        for (const auto& c : cells) r = add_up(r, c.radius.value);
        return r;
    };
    while (total() > tol && cells.size() < max_cells) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < cells.size(); ++i)
            if (radius_greater(cells[i], cells[worst])) worst = i;
        Rational lo = cells[worst].lo;
        Rational hi = cells[worst].hi;
        Rational m = (lo + hi) / 2;
        cells[worst] = integ.cell({lo, m}, std::nullopt);
        cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(worst) + 1, integ.cell({m, hi}, std::nullopt));
    }
    CertifiedIntegral out = integ.assemble(std::move(cells), rule);
    out.converged = out.radius.exact ? *out.radius.exact <= from_double(tol) : out.radius.value <= tol;
    return out;
}

} // namespace ineqcert
