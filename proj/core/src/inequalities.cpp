#include "ineqcert/inequalities.hpp"

#include "ineqcert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ineqcert {

namespace {

constexpr std::array<InequalityId, 17> kAll{
    InequalityId::zero_mean,       InequalityId::gruss_mean,     InequalityId::gruss,
    InequalityId::stieltjes,       InequalityId::stieltjes_weighted,
    InequalityId::gruss_stieltjes, InequalityId::ostrowski,      InequalityId::ostrowski_pert,
    InequalityId::trapezoid,       InequalityId::trapezoid_pert, InequalityId::ogruss,
    InequalityId::ogruss_pert,     InequalityId::cheby,          InequalityId::interior_n,
    InequalityId::interior_n_pert, InequalityId::boundary_n,     InequalityId::boundary_n_pert,
};

std::string derivative_name(const std::string& fn, unsigned k) {
    if (k == 0) return fn;
    if (k == 1) return fn + "'";
    if (k == 2) return fn + "''";
    return fn + "^(" + std::to_string(k) + ")";
}

Rational rabs(const Rational& q) { return abs(q); }
double rabs(double v) { return std::fabs(v); }

template <typename S>
S ipow(const S& base, unsigned e) {
    S acc(1);
    for (unsigned i = 0; i < e; ++i) acc *= base;
    return acc;
}

/// Shared state for one evaluation: rigor, tightness, echoed ranges, warnings.
struct Ledger {
    explicit Ledger(Interval span) : I(std::move(span)) {}

    Interval I;
    Rigor rigor = Rigor::Exact;
    bool rhs_exact = true;
    std::vector<NamedRange> ranges;
    std::vector<std::string> warnings;
};

// ---- exact backend --------------------------------------------------------

struct ExactOps {
    using Scalar = Rational;
    using Fn = PiecewisePoly;
    static constexpr NumericMode mode = NumericMode::Exact;

    Ledger& led;

    const Interval& I() const { return led.I; }
    Scalar S(const Rational& q) const { return q; }
    static Number number(const Scalar& v) { return Number::of(v); }

    Scalar integral(const Fn& f) const { return integrate_exact(f); }
    Scalar integral_product(const Fn& f, const Fn& g) const { return integrate_exact(f * g); }
    Scalar moment(const Fn& g) const {
        Polynomial t_minus_mid({Rational(-I().mid()), Rational(1)});
        return integrate_exact(g * PiecewisePoly(I(), t_minus_mid));
    }
    Scalar abs_integral(const Fn& f, const Scalar& shift) const {
        RationalBounds v = integrate_abs(f, shift);
        led.rhs_exact = led.rhs_exact && v.is_point();
        return v.hi;
    }
    Scalar value(const Fn& f, unsigned k, const Scalar& x) const { return f.derivative_at(k, x); }
    Scalar stieltjes(const Fn& f, const BVFunction& u) const { return stieltjes_integral(f, u); }
    Scalar stieltjes_product(const Fn& f, const Fn& g, const BVFunction& u) const { return stieltjes_integral(f * g, u); }
    Scalar variation(const BVFunction& u) const {
        RationalBounds v = total_variation(u);
        led.rhs_exact = led.rhs_exact && v.is_point();
        return v.hi;
    }
    void require_continuous(const Fn& f, unsigned order, const std::string& name) const {
        if (!f.is_continuous(order))
            throw DiscontinuityError(order == 0 ? name + " must be continuous"
                                                : name + " must have continuous derivatives up to order " +
                                                      std::to_string(order));
    }

    RangeBound range(const Fn& f, unsigned k, const std::optional<RangeBound>& supplied, const std::string& name) const {
        RangeBound r;
        if (supplied) {
            if (supplied->lo > supplied->hi) throw InvalidRange("range for " + derivative_name(name, k) + " has lo > hi");
            if (!range_contains(f, k, supplied->lo, supplied->hi))
                throw InvalidRange("supplied range [" + to_string(supplied->lo) + ", " + to_string(supplied->hi) +
                                   "] does not contain " + derivative_name(name, k));
            r = {supplied->lo, supplied->hi, Rigor::Exact, true};
        } else {
            r = derivative_range(f, k);
            led.rhs_exact = led.rhs_exact && r.tight;
        }
        led.ranges.push_back({derivative_name(name, k), r});
        return r;
    }
    Scalar lo(const RangeBound& r) const { return r.lo; }
    Scalar hi(const RangeBound& r) const { return r.hi; }
};

// ---- float backend --------------------------------------------------------

struct FloatOps {
    using Scalar = double;
    using Fn = Function;
    static constexpr NumericMode mode = NumericMode::Float;

    Ledger& led;

    const Interval& I() const { return led.I; }
    Scalar S(const Rational& q) const { return to_double(q); }
    static Number number(const Scalar& v) { return Number::of(v); }

    static std::vector<Rational> breaks_of(std::initializer_list<const Fn*> fs) {
        std::vector<Rational> out;
        for (const Fn* f : fs) {
            auto k = kinks(*f);
            out.insert(out.end(), k.begin(), k.end());
        }
        return out;
    }

    Scalar integral(const Fn& f) const {
        if (auto* p = std::get_if<PiecewisePoly>(&f)) return to_double(integrate_exact(*p));
        return integrate_float([&](double t) { return eval(f, t); }, I(), breaks_of({&f}));
    }
    Scalar integral_product(const Fn& f, const Fn& g) const {
        auto* p = std::get_if<PiecewisePoly>(&f);
        auto* q = std::get_if<PiecewisePoly>(&g);
        if (p && q) return to_double(integrate_exact(*p * *q));
        return integrate_float([&](double t) { return eval(f, t) * eval(g, t); }, I(), breaks_of({&f, &g}));
    }
    Scalar moment(const Fn& g) const {
        double mid = to_double(I().mid());
        return integrate_float([&](double t) { return (t - mid) * eval(g, t); }, I(), breaks_of({&g}));
    }
    Scalar abs_integral(const Fn& f, const Scalar& shift) const {
        if (auto* p = std::get_if<PiecewisePoly>(&f)) return to_double(integrate_abs(*p, from_double(shift)).hi);
        return integrate_float([&](double t) { return std::fabs(eval(f, t) - shift); }, I(), breaks_of({&f}));
    }
    Scalar value(const Fn& f, unsigned k, const Scalar& x) const { return eval_derivative(f, k, x); }
    Scalar stieltjes_product(const Fn& f, const Fn& g, const BVFunction& u) const {
        const PiecewisePoly du = u.base().derivative();
        std::vector<Rational> br = breaks_of({&f, &g});
        br.insert(br.end(), u.base().breakpoints().begin(), u.base().breakpoints().end());
        double total = integrate_float([&](double t) { return eval(f, t) * eval(g, t) * du(t); }, I(), br);
        for (const auto& j : u.jumps()) {
            Rational m = u.mass(j);
            if (sgn(m) == 0) continue;
            double t = to_double(j.t);
            total += eval(f, t) * eval(g, t) * to_double(m);
        }
        return total;
    }
    Scalar stieltjes(const Fn& f, const BVFunction& u) const {
        if (auto* p = std::get_if<PiecewisePoly>(&f)) return to_double(stieltjes_integral(*p, u));
        Fn one = PiecewisePoly(I(), Polynomial::constant(Rational(1)));
        return stieltjes_product(f, one, u);
    }
    Scalar variation(const BVFunction& u) const { return to_double(total_variation(u).hi); }
    void require_continuous(const Fn& f, unsigned order, const std::string& name) const {
        if (auto* p = std::get_if<PiecewisePoly>(&f)) ExactOps{led}.require_continuous(*p, order, name);
    }

    RangeBound range(const Fn& f, unsigned k, const std::optional<RangeBound>& supplied, const std::string& name) const {
        if (auto* p = std::get_if<PiecewisePoly>(&f)) return ExactOps{led}.range(*p, k, supplied, name);
        const Expr& e = std::get<Expr>(f);
        RangeBound r;
        if (supplied) {
            RangeBound probe = sampled_range(e, k, I(), 1000);
            if (probe.lo < supplied->lo || probe.hi > supplied->hi)
                throw InvalidRange("supplied range does not contain sampled values of " + derivative_name(name, k));
            r = {supplied->lo, supplied->hi, Rigor::Sampled, false};
            led.warnings.push_back("range for " + derivative_name(name, k) +
                                   " was supplied for an expression and checked only by sampling");
        } else {
            r = range_enclosure(e, k, I());
        }
        led.rigor = weakest(led.rigor, r.rigor);
        led.rhs_exact = false;
        led.ranges.push_back({derivative_name(name, k), r});
        return r;
    }
    Scalar lo(const RangeBound& r) const { return to_double(r.lo); }
    Scalar hi(const RangeBound& r) const { return to_double(r.hi); }
};

// ---- shared formulas ------------------------------------------------------

template <typename O>
BoundReport finish(O& o, InequalityId id, const typename O::Scalar& lhs, const typename O::Scalar& rhs,
                   const typename O::Scalar& perturbation) {
    using S = typename O::Scalar;
    BoundReport r;
    r.id = id;
    r.lhs = O::number(lhs);
    r.rhs = O::number(rhs);
    r.perturbation = O::number(perturbation);
    if (rhs == S(0)) {
        r.ratio = lhs == S(0) ? O::number(S(0)) : Number::of(std::numeric_limits<double>::infinity());
    } else {
        r.ratio = O::number(S(lhs / rhs));
    }
    r.mode = O::mode;
    r.rigor = o.led.rigor;
    r.rhs_exact = o.led.rhs_exact;
    r.a = o.I().a();
    r.b = o.I().b();
    r.ranges = std::move(o.led.ranges);
    r.warnings = std::move(o.led.warnings);
    return r;
}

template <typename O>
typename O::Scalar covariance(O& o, const typename O::Fn& f, const typename O::Fn& g) {
    using S = typename O::Scalar;
    S L = o.S(o.I().length());
    return S(o.integral_product(f, g) / L - o.integral(f) * o.integral(g) / (L * L));
}

template <typename O>
BoundReport zero_mean(O& o, const typename O::Fn& f, const typename O::Fn& l, const std::optional<RangeBound>& r) {
    using S = typename O::Scalar;
    S mean_l = o.integral(l);
    S l1 = o.abs_integral(l, S(0));
    if constexpr (O::mode == NumericMode::Exact) {
        if (mean_l != 0) throw NonZeroMean("the weight l must have zero integral, got " + to_string(mean_l));
    } else {
        if (std::fabs(mean_l) > 1e-12 * l1) throw NonZeroMean("the weight l must have zero integral");
    }
    RangeBound rf = o.range(f, 0, r, "f");
    S lhs = rabs(S(o.integral_product(f, l)));
    S rhs = S(o.hi(rf) - o.lo(rf)) * l1 / 2;
    return finish(o, InequalityId::zero_mean, lhs, rhs, S(0));
}

template <typename O>
BoundReport gruss_mean(O& o, const typename O::Fn& f, const typename O::Fn& g, const std::optional<RangeBound>& r) {
    using S = typename O::Scalar;
    S L = o.S(o.I().length());
    RangeBound rf = o.range(f, 0, r, "f");
    S lhs = rabs(covariance(o, f, g));
    S mean_g = o.integral(g) / L;
    S rhs = S(o.hi(rf) - o.lo(rf)) * o.abs_integral(g, mean_g) / (2 * L);
    return finish(o, InequalityId::gruss_mean, lhs, rhs, S(0));
}

template <typename O>
BoundReport gruss(O& o, const typename O::Fn& f, const typename O::Fn& g, const std::optional<RangeBound>& rf_in,
                  const std::optional<RangeBound>& rg_in) {
    using S = typename O::Scalar;
    RangeBound rf = o.range(f, 0, rf_in, "f");
    RangeBound rg = o.range(g, 0, rg_in, "g");
    S lhs = rabs(covariance(o, f, g));
    S rhs = S(o.hi(rf) - o.lo(rf)) * S(o.hi(rg) - o.lo(rg)) / 4;
    return finish(o, InequalityId::gruss, lhs, rhs, S(0));
}

template <typename O>
BoundReport stieltjes(O& o, const typename O::Fn& f, const BVFunction& u, const std::optional<RangeBound>& r) {
    using S = typename O::Scalar;
    if (!(u.span() == o.I())) throw PreconditionError("integrator lives on a different interval");
    if (u.at_a() != u.at_b())
        throw SideConditionViolated("u(a) = u(b) fails: u(a) = " + to_string(u.at_a()) + ", u(b) = " + to_string(u.at_b()));
    o.require_continuous(f, 0, "f");
    RangeBound rf = o.range(f, 0, r, "f");
    S lhs = rabs(S(o.stieltjes(f, u)));
    S rhs = S(o.hi(rf) - o.lo(rf)) * o.variation(u) / 2;
    return finish(o, InequalityId::stieltjes, lhs, rhs, S(0));
}

template <typename O>
BoundReport stieltjes_weighted(O& o, const typename O::Fn& f, const typename O::Fn& l, const BVFunction& u,
                               const std::optional<RangeBound>& r) {
    using S = typename O::Scalar;
    if (!(u.span() == o.I())) throw PreconditionError("integrator lives on a different interval");
    o.require_continuous(f, 0, "f");
    o.require_continuous(l, 0, "l");
    S side = o.stieltjes(l, u);
    S variation = o.variation(u);
    RangeBound rl = o.range(l, 0, std::nullopt, "l");
    S l_sup = std::max(rabs(o.lo(rl)), rabs(o.hi(rl)));
    if constexpr (O::mode == NumericMode::Exact) {
        if (side != 0) throw SideConditionViolated("integral of l du = 0 fails: got " + to_string(side));
    } else {
        if (std::fabs(side) > 1e-12 * std::max(1.0, l_sup * variation))
            throw SideConditionViolated("integral of l du = 0 fails");
    }
    RangeBound rf = o.range(f, 0, r, "f");
    S lhs = rabs(S(o.stieltjes_product(f, l, u)));
    S rhs = S(o.hi(rf) - o.lo(rf)) * l_sup * variation / 2;
    return finish(o, InequalityId::stieltjes_weighted, lhs, rhs, S(0));
}

template <typename O>
BoundReport gruss_stieltjes(O& o, const typename O::Fn& f, const typename O::Fn& g, const BVFunction& u,
                            const std::optional<RangeBound>& r) {
    using S = typename O::Scalar;
    if (!(u.span() == o.I())) throw PreconditionError("integrator lives on a different interval");
    Rational d_exact = u.at_b() - u.at_a();
    if (sgn(d_exact) == 0) throw DegenerateIntegrator("u(b) = u(a); the normalised Stieltjes means are undefined");
    o.require_continuous(f, 0, "f");
    o.require_continuous(g, 0, "g");
    S D = o.S(d_exact);
    S sf = o.stieltjes(f, u);
    S sg = o.stieltjes(g, u);
    S sfg = o.stieltjes_product(f, g, u);
    S lhs = rabs(S(sfg / D - sf * sg / (D * D)));
    S K = sg / D;
    RangeBound rg = o.range(g, 0, std::nullopt, "g");
    S g_sup = std::max(rabs(S(o.lo(rg) - K)), rabs(S(o.hi(rg) - K)));
    RangeBound rf = o.range(f, 0, r, "f");
    S rhs = S(o.hi(rf) - o.lo(rf)) * g_sup * o.variation(u) / (2 * rabs(D));
    return finish(o, InequalityId::gruss_stieltjes, lhs, rhs, S(0));
}

template <typename O>
typename O::Scalar position_factor(O& o, const Rational& x) {
    const Interval& I = o.I();
    Rational q = (x - I.mid()) / I.length();
    return o.S(Rational(Rational(1) / 4 + q * q));
}

void require_inside(const Interval& I, const Rational& x) {
    if (!I.contains(x))
        throw OutOfInterval("x = " + to_string(x) + " is outside [" + to_string(I.a()) + ", " + to_string(I.b()) + "]");
}

template <typename O>
BoundReport ostrowski(O& o, const typename O::Fn& f, const Rational& x, bool perturbed, const std::optional<RangeBound>& r) {
    using S = typename O::Scalar;
    require_inside(o.I(), x);
    o.require_continuous(f, 0, "f");
    S L = o.S(o.I().length());
    RangeBound rd = o.range(f, 1, r, "f");
    S base = S(o.value(f, 0, o.S(x)) - o.integral(f) / L);
    S factor = position_factor(o, x);
    if (!perturbed) {
        S sup = std::max(rabs(o.lo(rd)), rabs(o.hi(rd)));
        auto rep = finish(o, InequalityId::ostrowski, rabs(base), S(factor * L * sup), S(0));
        rep.x = x;
        return rep;
    }
    S c = S(o.lo(rd) + o.hi(rd)) / 2;
    S pert = c * o.S(Rational(x - o.I().mid()));
    S rhs = factor * S(o.hi(rd) - o.lo(rd)) * L / 2;
    auto rep = finish(o, InequalityId::ostrowski_pert, rabs(S(base - pert)), rhs, pert);
    rep.x = x;
    return rep;
}

template <typename O>
BoundReport trapezoid(O& o, const typename O::Fn& f, const Rational& x, bool perturbed, const std::optional<RangeBound>& r) {
    using S = typename O::Scalar;
    require_inside(o.I(), x);
    o.require_continuous(f, 0, "f");
    const Interval& I = o.I();
    S L = o.S(I.length());
    RangeBound rd = o.range(f, 1, r, "f");
    S endpoint_mean = S(o.S(Rational(x - I.a())) * o.value(f, 0, o.S(I.a())) +
                        o.S(Rational(I.b() - x)) * o.value(f, 0, o.S(I.b()))) / L;
    S base = S(endpoint_mean - o.integral(f) / L);
    S factor = position_factor(o, x);
    if (!perturbed) {
        S sup = std::max(rabs(o.lo(rd)), rabs(o.hi(rd)));
        auto rep = finish(o, InequalityId::trapezoid, rabs(base), S(factor * L * sup), S(0));
        rep.x = x;
        return rep;
    }
    // shifting f by c*t moves the classic difference by c*(x - mid); the perturbation removes that
    S c = S(o.lo(rd) + o.hi(rd)) / 2;
    S pert = c * o.S(Rational(I.mid() - x));
    S rhs = factor * S(o.hi(rd) - o.lo(rd)) * L / 2;
    auto rep = finish(o, InequalityId::trapezoid_pert, rabs(S(base - pert)), rhs, pert);
    rep.x = x;
    return rep;
}

template <typename O>
BoundReport ostrowski_gruss(O& o, const typename O::Fn& f, const typename O::Fn& g, bool perturbed,
                            const std::optional<RangeBound>& rf_in, const std::optional<RangeBound>& rg_in) {
    using S = typename O::Scalar;
    o.require_continuous(f, 0, "f");
    S L = o.S(o.I().length());
    RangeBound rd = o.range(f, 1, rf_in, "f");
    RangeBound rg = o.range(g, 0, rg_in, "g");
    S spread_g = S(o.hi(rg) - o.lo(rg));
    S cov = covariance(o, f, g);
    if (!perturbed) {
        S sup = std::max(rabs(o.lo(rd)), rabs(o.hi(rd)));
        return finish(o, InequalityId::ogruss, rabs(cov), S(L * spread_g * sup / 8), S(0));
    }
    S c = S(o.lo(rd) + o.hi(rd)) / 2;
    S pert = c * o.moment(g) / L;
    S rhs = L * spread_g * S(o.hi(rd) - o.lo(rd)) / 16;
    return finish(o, InequalityId::ogruss_pert, rabs(S(cov - pert)), rhs, pert);
}

template <typename O>
BoundReport cheby(O& o, const typename O::Fn& f, const typename O::Fn& g, const std::optional<RangeBound>& rf_in,
                  const std::optional<RangeBound>& rg_in) {
    using S = typename O::Scalar;
    o.require_continuous(f, 0, "f");
    o.require_continuous(g, 0, "g");
    S L = o.S(o.I().length());
    RangeBound rf = o.range(f, 1, rf_in, "f");
    RangeBound rg = o.range(g, 1, rg_in, "g");
    S sf = std::max(rabs(o.lo(rf)), rabs(o.hi(rf)));
    S sg = std::max(rabs(o.lo(rg)), rabs(o.hi(rg)));
    return finish(o, InequalityId::cheby, rabs(covariance(o, f, g)), S(L * L * sf * sg / 12), S(0));
}

template <typename O>
BoundReport nth_degree(O& o, const typename O::Fn& f, const Rational& x, unsigned n, bool perturbed, bool boundary,
                       const std::optional<RangeBound>& r) {
    using S = typename O::Scalar;
    if (n < 1) throw PreconditionError("the order n must be at least 1");
    require_inside(o.I(), x);
    const Interval& I = o.I();
    o.require_continuous(f, n - 1, "f");
    S expansion(0);
    for (unsigned k = 0; k < n; ++k) {
        if (boundary) {
            auto [wa, wb] = boundary_weights(x, k, I);
            expansion += o.S(wa) * o.value(f, k, o.S(I.a())) + o.S(wb) * o.value(f, k, o.S(I.b()));
        } else {
            expansion += o.S(interior_weight(x, k, I)) * o.value(f, k, o.S(x));
        }
    }
    S remainder = S(o.integral(f) - expansion);
    RangeBound rn = o.range(f, n, r, "f");
    KernelIntegrals K = kernel_integrals(x, n, I);
    InequalityId id;
    if (boundary) id = perturbed ? InequalityId::boundary_n_pert : InequalityId::boundary_n;
    else id = perturbed ? InequalityId::interior_n_pert : InequalityId::interior_n;
    BoundReport rep;
    if (!perturbed) {
        S sup = std::max(rabs(o.lo(rn)), rabs(o.hi(rn)));
        rep = finish(o, id, rabs(remainder), S(sup * o.S(K.absolute_integral)), S(0));
    } else {
        S c = S(o.lo(rn) + o.hi(rn)) / 2;
        // interior remainder is (-1)^n times the kernel integral; boundary remainder carries no sign
        Rational sign = (!boundary && n % 2 == 1) ? Rational(-1) : Rational(1);
        S pert = c * o.S(Rational(sign * K.signed_integral));
        S rhs = S(o.hi(rn) - o.lo(rn)) * o.S(K.absolute_integral) / 2;
        rep = finish(o, id, rabs(S(remainder - pert)), rhs, pert);
    }
    rep.x = x;
    rep.n = n;
    return rep;
}

template <typename T>
const T& require(const std::optional<T>& v, const char* what) {
    if (!v) throw PreconditionError(std::string("missing input: ") + what);
    return *v;
}

template <typename O, typename Get>
BoundReport dispatch(O& o, const BoundInput& in, Get fn) {
    using Id = InequalityId;
    auto x = [&] { return in.x ? *in.x : o.I().mid(); };
    switch (in.id) {
    case Id::zero_mean: return zero_mean(o, fn(in.f, "f"), fn(in.l, "l"), in.range);
    case Id::gruss_mean: return gruss_mean(o, fn(in.f, "f"), fn(in.g, "g"), in.range);
    case Id::gruss: return gruss(o, fn(in.f, "f"), fn(in.g, "g"), in.range, in.range_g);
    case Id::stieltjes: return stieltjes(o, fn(in.f, "f"), require(in.u, "u"), in.range);
    case Id::stieltjes_weighted: return stieltjes_weighted(o, fn(in.f, "f"), fn(in.l, "l"), require(in.u, "u"), in.range);
    case Id::gruss_stieltjes: return gruss_stieltjes(o, fn(in.f, "f"), fn(in.g, "g"), require(in.u, "u"), in.range);
    case Id::ostrowski: return ostrowski(o, fn(in.f, "f"), x(), false, in.range);
    case Id::ostrowski_pert: return ostrowski(o, fn(in.f, "f"), x(), true, in.range);
    case Id::trapezoid: return trapezoid(o, fn(in.f, "f"), x(), false, in.range);
    case Id::trapezoid_pert: return trapezoid(o, fn(in.f, "f"), x(), true, in.range);
    case Id::ogruss: return ostrowski_gruss(o, fn(in.f, "f"), fn(in.g, "g"), false, in.range, in.range_g);
    case Id::ogruss_pert: return ostrowski_gruss(o, fn(in.f, "f"), fn(in.g, "g"), true, in.range, in.range_g);
    case Id::cheby: return cheby(o, fn(in.f, "f"), fn(in.g, "g"), in.range, in.range_g);
    case Id::interior_n: return nth_degree(o, fn(in.f, "f"), x(), in.n, false, false, in.range);
    case Id::interior_n_pert: return nth_degree(o, fn(in.f, "f"), x(), in.n, true, false, in.range);
    case Id::boundary_n: return nth_degree(o, fn(in.f, "f"), x(), in.n, false, true, in.range);
    case Id::boundary_n_pert: return nth_degree(o, fn(in.f, "f"), x(), in.n, true, true, in.range);
    }
    throw UnknownInequality("unknown inequality");
}

bool needs(InequalityId id, char which) {
    using Id = InequalityId;
    switch (which) {
    case 'g':
        return id == Id::gruss_mean || id == Id::gruss || id == Id::gruss_stieltjes || id == Id::ogruss ||
               id == Id::ogruss_pert || id == Id::cheby;
    case 'l': return id == Id::zero_mean || id == Id::stieltjes_weighted;
    default: return true;
    }
}

ExactOps exact_ops(Ledger& led) { return ExactOps{led}; }

} // namespace

// ---- ids ------------------------------------------------------------------

const std::array<InequalityId, 17>& all_inequalities() { return kAll; }

std::string_view to_string(InequalityId id) {
    switch (id) {
    case InequalityId::zero_mean: return "zero_mean";
    case InequalityId::gruss_mean: return "gruss_mean";
    case InequalityId::gruss: return "gruss";
    case InequalityId::stieltjes: return "stieltjes";
    case InequalityId::stieltjes_weighted: return "stieltjes_weighted";
    case InequalityId::gruss_stieltjes: return "gruss_stieltjes";
    case InequalityId::ostrowski: return "ostrowski";
    case InequalityId::ostrowski_pert: return "ostrowski_pert";
    case InequalityId::trapezoid: return "trapezoid";
    case InequalityId::trapezoid_pert: return "trapezoid_pert";
    case InequalityId::ogruss: return "ogruss";
    case InequalityId::ogruss_pert: return "ogruss_pert";
    case InequalityId::cheby: return "cheby";
    case InequalityId::interior_n: return "interior_n";
    case InequalityId::interior_n_pert: return "interior_n_pert";
    case InequalityId::boundary_n: return "boundary_n";
    case InequalityId::boundary_n_pert: return "boundary_n_pert";
    }
    return "unknown";
}

InequalityId parse_inequality_id(std::string_view text) {
    for (InequalityId id : kAll)
        if (to_string(id) == text) return id;
    throw UnknownInequality("unknown inequality id '" + std::string(text) + "'");
}

bool is_perturbed(InequalityId id) {
    return id == InequalityId::ostrowski_pert || id == InequalityId::trapezoid_pert || id == InequalityId::ogruss_pert ||
           id == InequalityId::interior_n_pert || id == InequalityId::boundary_n_pert;
}

InequalityId classic_form(InequalityId id) {
    switch (id) {
    case InequalityId::ostrowski_pert: return InequalityId::ostrowski;
    case InequalityId::trapezoid_pert: return InequalityId::trapezoid;
    case InequalityId::ogruss_pert: return InequalityId::ogruss;
    case InequalityId::interior_n_pert: return InequalityId::interior_n;
    case InequalityId::boundary_n_pert: return InequalityId::boundary_n;
    default: return id;
    }
}

std::string_view to_string(NumericMode m) { return m == NumericMode::Exact ? "exact" : "float"; }

bool BoundReport::holds() const {
    if (mode == NumericMode::Exact && lhs.exact && rhs.exact) return *lhs.exact <= *rhs.exact;
    return lhs.value <= rhs.value + 1e-9 * std::max(1.0, rhs.value);
}

// ---- shift polynomial -----------------------------------------------------

ShiftPolynomial::ShiftPolynomial(unsigned n, std::vector<Rational> lower) : n_(n), lower_(std::move(lower)) {
    if (lower_.size() > n_) throw PreconditionError("shift polynomial: too many lower-order coefficients");
}

Polynomial ShiftPolynomial::polynomial() const {
    std::vector<Rational> c(n_ + 1, Rational(0));
    for (std::size_t i = 0; i < lower_.size(); ++i) c[i] = lower_[i];
    c[n_] = 1 / factorial(n_);
    return Polynomial(std::move(c));
}

Polynomial ShiftPolynomial::monic() const { return factorial(n_) * polynomial(); }

PiecewisePoly median_shift(const PiecewisePoly& g, unsigned n, const RangeBound& r, const ShiftPolynomial& p) {
    if (p.n() != n) throw PreconditionError("shift polynomial degree differs from n");
    return g - r.median() * p.polynomial();
}

Expr median_shift(const Expr& g, unsigned n, const RangeBound& r, const ShiftPolynomial& p) {
    if (p.n() != n) throw PreconditionError("shift polynomial degree differs from n");
    const auto& c = p.polynomial().coefficients();
    Expr poly = Expr::constant(Rational(0));
    for (std::size_t i = 0; i < c.size(); ++i)
        poly = poly + Expr::constant(c[i]) * Expr::power(Expr::variable(), static_cast<int>(i));
    return g - Expr::constant(r.median()) * poly;
}

// ---- evaluation -----------------------------------------------------------

BoundReport evaluate(const BoundInput& in) {
    Ledger led{in.interval};
    bool all_exact = true;
    if (in.f && !is_exact(*in.f)) all_exact = false;
    if (needs(in.id, 'g') && in.g && !is_exact(*in.g)) all_exact = false;
    if (needs(in.id, 'l') && in.l && !is_exact(*in.l)) all_exact = false;
    if (all_exact) {
        ExactOps o{led};
        return dispatch(o, in, [&](const std::optional<Function>& fn, const char* name) -> const PiecewisePoly& {
            const Function& f = require(fn, name);
            const auto& p = std::get<PiecewisePoly>(f);
            if (!(p.span() == in.interval)) throw PreconditionError(std::string(name) + " lives on a different interval");
            return p;
        });
    }
    FloatOps o{led};
    led.warnings.push_back("expression input: evaluated in floating point");
    return dispatch(o, in, [&](const std::optional<Function>& fn, const char* name) -> const Function& {
        return require(fn, name);
    });
}

BoundReport bound_zero_mean(const PiecewisePoly& f, const PiecewisePoly& l, std::optional<RangeBound> r) {
    Ledger led{f.span()};
    auto o = exact_ops(led);
    return zero_mean(o, f, l, r);
}

BoundReport bound_gruss_mean(const PiecewisePoly& f, const PiecewisePoly& g, std::optional<RangeBound> r) {
    Ledger led{f.span()};
    auto o = exact_ops(led);
    return gruss_mean(o, f, g, r);
}

BoundReport bound_gruss_classic(const PiecewisePoly& f, const PiecewisePoly& g, std::optional<RangeBound> rf,
                                std::optional<RangeBound> rg) {
    Ledger led{f.span()};
    auto o = exact_ops(led);
    return gruss(o, f, g, rf, rg);
}

BoundReport bound_stieltjes(const PiecewisePoly& f, const BVFunction& u, std::optional<RangeBound> r,
                            const std::optional<PiecewisePoly>& l) {
    Ledger led{f.span()};
    auto o = exact_ops(led);
    return l ? stieltjes_weighted(o, f, *l, u, r) : stieltjes(o, f, u, r);
}

BoundReport bound_gruss_stieltjes(const PiecewisePoly& f, const PiecewisePoly& g, const BVFunction& u,
                                  std::optional<RangeBound> r) {
    Ledger led{f.span()};
    auto o = exact_ops(led);
    return gruss_stieltjes(o, f, g, u, r);
}

BoundReport bound_ostrowski(const PiecewisePoly& f, const Rational& x, bool perturbed, std::optional<RangeBound> r) {
    Ledger led{f.span()};
    auto o = exact_ops(led);
    return ostrowski(o, f, x, perturbed, r);
}

BoundReport bound_trapezoid(const PiecewisePoly& f, const Rational& x, bool perturbed, std::optional<RangeBound> r) {
    Ledger led{f.span()};
    auto o = exact_ops(led);
    return trapezoid(o, f, x, perturbed, r);
}

BoundReport bound_ostrowski_gruss(const PiecewisePoly& f, const PiecewisePoly& g, bool perturbed,
                                  std::optional<RangeBound> rf_prime, std::optional<RangeBound> rg) {
    Ledger led{f.span()};
    auto o = exact_ops(led);
    return ostrowski_gruss(o, f, g, perturbed, rf_prime, rg);
}

BoundReport bound_cheby(const PiecewisePoly& f, const PiecewisePoly& g) {
    Ledger led{f.span()};
    auto o = exact_ops(led);
    return cheby(o, f, g, std::nullopt, std::nullopt);
}

BoundReport bound_interior_nth(const PiecewisePoly& f, const Rational& x, unsigned n, bool perturbed,
                               std::optional<RangeBound> r) {
    Ledger led{f.span()};
    auto o = exact_ops(led);
    return nth_degree(o, f, x, n, perturbed, false, r);
}

BoundReport bound_boundary_nth(const PiecewisePoly& f, const Rational& x, unsigned n, bool perturbed,
                               std::optional<RangeBound> r) {
    Ledger led{f.span()};
    auto o = exact_ops(led);
    return nth_degree(o, f, x, n, perturbed, true, r);
}

// ---- kernels and identities -----------------------------------------------

Rational kernel_Kn(const Rational& x, const Rational& t, unsigned n, const Interval& I) {
    if (n < 1) throw PreconditionError("the order n must be at least 1");
    require_inside(I, x);
    require_inside(I, t);
    Rational base = t <= x ? Rational(t - I.a()) : Rational(t - I.b());
    return power(base, n) / factorial(n);
}

KernelIntegrals kernel_integrals(const Rational& x, unsigned n, const Interval& I) {
    require_inside(I, x);
    Rational left = power(Rational(x - I.a()), n + 1);
    Rational f = factorial(n + 1);
    return {(left - power(Rational(x - I.b()), n + 1)) / f, (left + power(Rational(I.b() - x), n + 1)) / f};
}

Rational interior_weight(const Rational& x, unsigned k, const Interval& I) {
    Rational left = power(Rational(x - I.a()), k + 1);
    Rational right = power(Rational(I.b() - x), k + 1);
    return (right + (k % 2 == 0 ? left : Rational(-left))) / factorial(k + 1);
}

std::pair<Rational, Rational> boundary_weights(const Rational& x, unsigned k, const Interval& I) {
    Rational f = factorial(k + 1);
    Rational wa = power(Rational(x - I.a()), k + 1) / f;
    Rational wb = power(Rational(I.b() - x), k + 1) / f;
    if (k % 2 == 1) wb = -wb;
    return {wa, wb};
}

Rational identity_residual(const PiecewisePoly& f, const Rational& x, unsigned n, IdentityVariant variant) {
    if (n < 1) throw PreconditionError("the order n must be at least 1");
    const Interval I = f.span();
    require_inside(I, x);
    Rational total = integrate_exact(f);
    PiecewisePoly fn = f.derivative(n);
    if (variant == IdentityVariant::interior) {
        for (unsigned k = 0; k < n; ++k) total -= interior_weight(x, k, I) * f.derivative_at(k, x);
        // kernel as a piecewise polynomial in t with a break at x
        Rational inv = 1 / factorial(n);
        std::vector<Rational> br{I.a()};
        std::vector<Polynomial> ps;
        if (x > I.a()) {
            br.push_back(x);
            ps.push_back(inv * Polynomial::shifted_power(I.a(), n));
        }
        if (x < I.b()) {
            if (br.back() != I.b()) br.push_back(I.b());
            ps.push_back(inv * Polynomial::shifted_power(I.b(), n));
        }
        Rational remainder = integrate_exact(PiecewisePoly(br, ps) * fn);
        total -= (n % 2 == 0 ? remainder : Rational(-remainder));
    } else {
        for (unsigned k = 0; k < n; ++k) {
            auto [wa, wb] = boundary_weights(x, k, I);
            total -= wa * f.derivative_at(k, I.a()) + wb * f.derivative_at(k, I.b());
        }
        // (x - t)^n = (-1)^n (t - x)^n
        Polynomial kernel = Polynomial::shifted_power(x, n) * (n % 2 == 0 ? Rational(1) : Rational(-1)) * (1 / factorial(n));
        total -= integrate_exact(PiecewisePoly(I, kernel) * fn);
    }
    return total;
}

} // namespace ineqcert
