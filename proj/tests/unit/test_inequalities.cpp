#include "generators.hpp"

#include "ineqcert/inequalities.hpp"
#include "ineqcert/literal.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ineqcert;

namespace {

const Interval unit(0, 1);

PiecewisePoly poly_on(const Interval& I, std::vector<long> c) {
    std::vector<Rational> q;
    for (long v : c) q.push_back(Rational(v));
    return PiecewisePoly(I, Polynomial(q));
}

PiecewisePoly t_() { return poly_on(unit, {0, 1}); }
PiecewisePoly step() { return parse_piecewise("pw[(0,1/2): -1; (1/2,1): 1]"); }
Rational q(long p, long d = 1) { return Rational(p) / Rational(d); }
RangeBound range(Rational lo, Rational hi) { return RangeBound{std::move(lo), std::move(hi)}; }

Rational lhs(const BoundReport& r) { return *r.lhs.exact; }
Rational rhs(const BoundReport& r) { return *r.rhs.exact; }

double simpson(const std::function<double(double)>& f, double a, double b, int panels = 4000) {
    double h = (b - a) / panels, s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
    return s * h / 3;
}

} // namespace

TEST(ZeroMean, Examples) {
    BoundReport r = bound_zero_mean(step(), step());
    EXPECT_EQ(lhs(r), 1);
    EXPECT_EQ(rhs(r), 1);
    EXPECT_EQ(*r.ratio.exact, 1);
    EXPECT_EQ(lhs(bound_zero_mean(poly_on(unit, {3}), step())), 0);
    BoundReport s = bound_zero_mean(t_(), PiecewisePoly(unit, Polynomial({q(-1, 2), q(1)})));
    EXPECT_EQ(lhs(s), q(1, 12));
    EXPECT_EQ(rhs(s), q(1, 8));
    EXPECT_THROW(bound_zero_mean(t_(), t_()), NonZeroMean);
}

TEST(GrussMean, Examples) {
    BoundReport r = bound_gruss_mean(step(), step());
    EXPECT_EQ(lhs(r), 1);
    EXPECT_EQ(rhs(r), 1);
    BoundReport c = bound_gruss_mean(t_(), poly_on(unit, {4}));
    EXPECT_EQ(lhs(c), 0);
    EXPECT_EQ(rhs(c), 0);
    EXPECT_EQ(*c.ratio.exact, 0);
    BoundReport x = bound_gruss_mean(t_(), t_());
    EXPECT_EQ(lhs(x), q(1, 12));
    EXPECT_EQ(rhs(x), q(1, 8));
}

TEST(GrussClassic, Examples) {
    BoundReport r = bound_gruss_classic(step(), step());
    EXPECT_EQ(lhs(r), 1);
    EXPECT_EQ(rhs(r), 1);
    BoundReport c = bound_gruss_classic(poly_on(unit, {2}), t_());
    EXPECT_EQ(lhs(c), 0);
    EXPECT_EQ(rhs(c), 0);
    BoundReport x = bound_gruss_classic(t_(), t_());
    EXPECT_EQ(lhs(x), q(1, 12));
    EXPECT_EQ(rhs(x), q(1, 4));
}

TEST(GrussClassic, RejectsNarrowRange) {
    EXPECT_THROW(bound_gruss_classic(t_(), t_(), range(0, q(1, 2))), InvalidRange);
}

TEST(Stieltjes, IndicatorExtremal) {
    BVFunction u = parse_bv("bv[pieces: pw[(0,1): 1]; jumps: (0,0,0,1),(1,1,0,0)]");
    BoundReport r = bound_stieltjes(t_(), u);
    EXPECT_EQ(lhs(r), 1);
    EXPECT_EQ(rhs(r), 1);
    EXPECT_EQ(lhs(bound_stieltjes(poly_on(unit, {5}), u)), 0);
}

TEST(Stieltjes, SideConditions) {
    BVFunction open(t_());
    EXPECT_THROW(bound_stieltjes(t_(), open), SideConditionViolated);
    BVFunction flat(poly_on(unit, {2}));
    EXPECT_THROW(bound_gruss_stieltjes(t_(), t_(), flat), DegenerateIntegrator);
}

TEST(GrussStieltjes, ExtremalConstruction) {
    BVFunction u = parse_bv("bv[pieces: pw[(0,1): 0]; jumps: (0,-1,-1,0),(1,0,1,1)]");
    BoundReport r = bound_gruss_stieltjes(t_(), t_(), u);
    EXPECT_EQ(lhs(r), q(1, 4));
    EXPECT_EQ(rhs(r), q(1, 4));
    BoundReport c = bound_gruss_stieltjes(t_(), poly_on(unit, {3}), u);
    EXPECT_EQ(lhs(c), 0);
    EXPECT_EQ(rhs(c), 0);
}

TEST(GrussStieltjes, LebesgueIntegratorMatchesCovariance) {
    std::mt19937_64 rng(21);
    BVFunction u(t_());
    for (int i = 0; i < 30; ++i) {
        PiecewisePoly f(unit, testgen::poly(rng, 4)), g(unit, testgen::poly(rng, 4));
        EXPECT_EQ(lhs(bound_gruss_stieltjes(f, g, u)), lhs(bound_gruss_mean(f, g)));
    }
}

TEST(Ostrowski, Examples) {
    for (Rational x : {q(0), q(1, 3), q(1)}) EXPECT_EQ(lhs(bound_ostrowski(t_(), x, true)), 0);
    Interval I(q(-1), q(2));
    BoundReport c = bound_ostrowski(poly_on(I, {0, 1}), q(2), false);
    EXPECT_EQ(lhs(c), q(3, 2));
    EXPECT_EQ(rhs(c), q(3, 2));
    BoundReport p = bound_ostrowski(poly_on(unit, {0, 0, 1}), q(1, 2), true, range(0, 2));
    EXPECT_EQ(lhs(p), q(1, 12));
    EXPECT_EQ(rhs(p), q(1, 4));
    EXPECT_THROW(bound_ostrowski(t_(), q(3, 2), false), OutOfInterval);
}

TEST(Trapezoid, Examples) {
    BoundReport c = bound_trapezoid(t_(), q(0), false);
    EXPECT_EQ(lhs(c), q(1, 2));
    EXPECT_EQ(rhs(c), q(1, 2));
    EXPECT_EQ(lhs(bound_trapezoid(t_(), q(1, 2), false)), 0);
    // perturbation is c(mid - x); the remaining lhs is |5/12 - 1/4|
    BoundReport p = bound_trapezoid(poly_on(unit, {0, 0, 1}), q(1, 4), true, range(0, 2));
    EXPECT_EQ(*p.perturbation.exact, q(1, 4));
    EXPECT_EQ(lhs(p), q(1, 6));
    EXPECT_EQ(rhs(p), q(5, 16));
    EXPECT_TRUE(p.holds());
}

TEST(OstrowskiGruss, Examples) {
    BoundReport c = bound_ostrowski_gruss(t_(), step(), false);
    EXPECT_EQ(lhs(c), q(1, 4));
    EXPECT_EQ(rhs(c), q(1, 4));
    std::mt19937_64 rng(22);
    for (int i = 0; i < 10; ++i)
        EXPECT_EQ(lhs(bound_ostrowski_gruss(t_(), testgen::piecewise(rng, unit), true)), 0);
    BoundReport p = bound_ostrowski_gruss(poly_on(unit, {0, 0, 1}), step(), true, range(0, 2), range(-1, 1));
    EXPECT_EQ(lhs(p), 0);
    EXPECT_EQ(rhs(p), q(1, 4));
}

TEST(Cheby, Examples) {
    BoundReport r = bound_cheby(t_(), t_());
    EXPECT_EQ(lhs(r), q(1, 12));
    EXPECT_EQ(rhs(r), q(1, 12));
    BoundReport c = bound_cheby(poly_on(unit, {1}), t_());
    EXPECT_EQ(lhs(c), 0);
    EXPECT_EQ(rhs(c), 0);
    BoundReport s = bound_cheby(t_(), poly_on(unit, {0, 0, 1}));
    EXPECT_EQ(lhs(s), q(1, 12));
    EXPECT_EQ(rhs(s), q(1, 6));
}

TEST(Kernel, Examples) {
    EXPECT_EQ(kernel_Kn(q(1, 2), q(1, 4), 1, unit), q(1, 4));
    EXPECT_EQ(kernel_Kn(q(1, 2), q(3, 4), 1, unit), q(-1, 4));
    EXPECT_EQ(kernel_Kn(q(1, 2), q(3, 4), 2, unit), q(1, 32));
    KernelIntegrals k1 = kernel_integrals(q(1, 2), 1, unit);
    EXPECT_EQ(k1.signed_integral, 0);
    EXPECT_EQ(k1.absolute_integral, q(1, 4));
    KernelIntegrals k2 = kernel_integrals(q(0), 2, unit);
    EXPECT_EQ(k2.signed_integral, q(1, 6));
    EXPECT_EQ(k2.absolute_integral, q(1, 6));
}

TEST(Kernel, IntegralsMatchNumericQuadrature) {
    Interval I(q(-1, 2), q(3, 2));
    for (unsigned n = 1; n <= 6; ++n) {
        for (const Rational& x : testgen::grid(I, 21)) {
            auto K = [&](double t) { return to_double(kernel_Kn(x, from_double(t), n, I)); };
            double xd = to_double(x);
            // split at x where the kernel switches branch; stay just off x so each side sees its own branch
            const double eps = 1e-13;
            double s = 0, a = 0;
            if (xd > -0.5) {
                s += simpson(K, -0.5, xd - eps, 400);
                a += simpson([&](double t) { return std::fabs(K(t)); }, -0.5, xd - eps, 400);
            }
            if (xd < 1.5) {
                s += simpson(K, xd + eps, 1.5, 400);
                a += simpson([&](double t) { return std::fabs(K(t)); }, xd + eps, 1.5, 400);
            }
            KernelIntegrals ki = kernel_integrals(x, n, I);
            ASSERT_NEAR(to_double(ki.signed_integral), s, 1e-10) << "n=" << n << " x=" << to_string(x);
            ASSERT_NEAR(to_double(ki.absolute_integral), a, 1e-10) << "n=" << n << " x=" << to_string(x);
        }
    }
}

TEST(InteriorNth, Examples) {
    std::mt19937_64 rng(23);
    for (unsigned n = 1; n <= 4; ++n) {
        PiecewisePoly f(unit, testgen::poly(rng, static_cast<int>(n) - 1));
        for (bool pert : {false, true}) EXPECT_EQ(lhs(bound_interior_nth(f, q(1, 3), n, pert)), 0);
    }
    for (Rational x : {q(0), q(2, 5), q(1)}) {
        BoundReport r = bound_interior_nth(poly_on(unit, {0, 0, 1}), x, 2, true);
        EXPECT_EQ(lhs(r), 0);
        EXPECT_EQ(rhs(r), 0);
    }
    BoundReport c = bound_interior_nth(poly_on(unit, {0, 0, 0, 1}), q(1, 2), 2, false);
    EXPECT_EQ(rhs(c), q(1, 4));
    EXPECT_EQ(lhs(c), q(1, 8));
    EXPECT_TRUE(c.holds());
}

TEST(InteriorNth, OrderOneSignRegression) {
    // n = 1 interior remainder carries (-1)^n; f = t^2 on [0,1] must keep lhs within rhs at every x
    for (const Rational& x : testgen::grid(unit, 9)) {
        BoundReport r = bound_interior_nth(poly_on(unit, {0, 0, 1}), x, 1, true, range(0, 2));
        EXPECT_TRUE(r.holds()) << to_string(x) << ": " << to_string(lhs(r)) << " > " << to_string(rhs(r));
        BoundReport o = bound_ostrowski(poly_on(unit, {0, 0, 1}), x, true, range(0, 2));
        EXPECT_EQ(lhs(r), lhs(o));
    }
}

TEST(BoundaryNth, Examples) {
    std::mt19937_64 rng(24);
    for (unsigned n = 1; n <= 4; ++n) {
        PiecewisePoly f(unit, testgen::poly(rng, static_cast<int>(n) - 1));
        EXPECT_EQ(lhs(bound_boundary_nth(f, q(1, 4), n, false)), 0);
    }
    BoundReport p = bound_boundary_nth(poly_on(unit, {1, 2, 0, 5}), q(1, 3), 3, true);
    EXPECT_EQ(lhs(p), 0);
    EXPECT_EQ(rhs(p), 0);
}

TEST(BoundaryNth, ExpFloat) {
    BoundInput in;
    in.id = InequalityId::boundary_n;
    in.interval = unit;
    in.f = Function(parse("exp(x)"));
    in.x = q(1, 2);
    in.n = 2;
    BoundReport r = evaluate(in);
    EXPECT_EQ(r.mode, NumericMode::Float);
    double e = std::exp(1.0);
    // oracle: the expansion with the boundary weights evaluated by hand
    double expansion = 0;
    for (unsigned k = 0; k < 2; ++k) {
        auto [wa, wb] = boundary_weights(q(1, 2), k, unit);
        expansion += to_double(wa) * 1.0 + to_double(wb) * e;
    }
    EXPECT_NEAR(r.lhs.value, std::fabs((e - 1) - expansion), 1e-12);
    EXPECT_GE(r.rhs.value, e / 24);
    EXPECT_LE(r.rhs.value, e / 24 * (1 + 1e-3));
    EXPECT_TRUE(r.holds());
}

TEST(MedianShift, Examples) {
    PiecewisePoly g = poly_on(unit, {0, 0, 1});
    PiecewisePoly f = median_shift(g, 1, range(0, 2), ShiftPolynomial(1));
    EXPECT_EQ(f, poly_on(unit, {0, -1, 1}));
    EXPECT_EQ(sup_norm(f, 1), 1);

    RangeBound sym = range(-3, 3);
    EXPECT_EQ(median_shift(g, 2, sym, ShiftPolynomial(2)), g);

    PiecewisePoly h = median_shift(poly_on(unit, {0, 0, 0, 1}), 2, range(0, 6), ShiftPolynomial(2));
    EXPECT_EQ(h, PiecewisePoly(unit, Polynomial({q(0), q(0), q(-3, 2), q(1)})));
    RangeBound d2 = derivative_range(h, 2);
    EXPECT_EQ(d2.lo, -3);
    EXPECT_EQ(d2.hi, 3);
}

TEST(MedianShift, ShiftPolynomialClass) {
    ShiftPolynomial p(3, {q(1), q(-2)});
    PiecewisePoly P(unit, p.polynomial());
    EXPECT_EQ(derivative_range(P, 3).lo, 1);
    EXPECT_EQ(derivative_range(P, 3).hi, 1);
    EXPECT_EQ(p.monic().coefficients().back(), 1);
}

TEST(IdentityResidual, Examples) {
    EXPECT_EQ(identity_residual(poly_on(unit, {0, 0, 1}), q(1, 3), 2, IdentityVariant::interior), 0);
    EXPECT_EQ(identity_residual(poly_on(unit, {0, -1, 0, 0, 0, 1}), q(1, 4), 3, IdentityVariant::boundary), 0);
    for (auto v : {IdentityVariant::interior, IdentityVariant::boundary})
        for (const Rational& x : testgen::grid(unit, 5))
            EXPECT_EQ(identity_residual(poly_on(unit, {3, -2}), x, 1, v), 0);
}

TEST(IdentityResidual, RandomPolynomials) {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 200; ++trial) {
        Interval I(testgen::small_rational(rng, 2, 2), Rational(3));
        PiecewisePoly f(I, testgen::poly(rng, 8));
        std::uniform_int_distribution<unsigned> order(1, 4);
        unsigned n = order(rng);
        Rational x = I.a() + I.length() * Rational(trial % 7) / 6;
        ASSERT_EQ(identity_residual(f, x, n, IdentityVariant::interior), 0);
        ASSERT_EQ(identity_residual(f, x, n, IdentityVariant::boundary), 0);
    }
}

TEST(Oracle, ClassicLhsAgainstSimpson) {
    // recompute a few left-hand sides from their definitions in double precision
    std::mt19937_64 rng(26);
    for (int trial = 0; trial < 100; ++trial) {
        PiecewisePoly f(unit, testgen::poly(rng, 5)), g(unit, testgen::poly(rng, 5));
        auto F = [&](double t) { return f(t); };
        auto G = [&](double t) { return g(t); };
        double mf = simpson(F, 0, 1), mg = simpson(G, 0, 1);
        double cov = simpson([&](double t) { return F(t) * G(t); }, 0, 1) - mf * mg;
        EXPECT_NEAR(bound_cheby(f, g).lhs.value, std::fabs(cov), 1e-10);
        double x = 0.3;
        EXPECT_NEAR(bound_ostrowski(f, q(3, 10), false).lhs.value, std::fabs(F(x) - mf), 1e-10);
        double trap = 0.3 * F(0) + 0.7 * F(1) - mf;
        EXPECT_NEAR(bound_trapezoid(f, q(3, 10), false).lhs.value, std::fabs(trap), 1e-10);
    }
}

TEST(Evaluate, RoutesAndErrors) {
    BoundInput in;
    in.id = InequalityId::cheby;
    in.f = Function(t_());
    in.g = Function(t_());
    EXPECT_EQ(*evaluate(in).lhs.exact, q(1, 12));
    in.g.reset();
    EXPECT_THROW(evaluate(in), PreconditionError);
    EXPECT_THROW(parse_inequality_id("bogus"), UnknownInequality);
    for (InequalityId id : all_inequalities()) EXPECT_EQ(parse_inequality_id(to_string(id)), id);
    EXPECT_EQ(classic_form(InequalityId::ogruss_pert), InequalityId::ogruss);
}

TEST(StieltjesWeighted, UnitWeightReducesToStieltjes) {
    BVFunction u = parse_bv("bv[pieces: pw[(0,1): 1]; jumps: (0,0,0,1),(1,1,0,0)]");
    std::mt19937_64 rng(27);
    for (int i = 0; i < 20; ++i) {
        PiecewisePoly f(unit, testgen::poly(rng, 5));
        BoundInput in;
        in.id = InequalityId::stieltjes_weighted;
        in.f = Function(f);
        in.l = Function(poly_on(unit, {1}));
        in.u = u;
        BoundReport w = evaluate(in);
        BoundReport s = bound_stieltjes(f, u);
        EXPECT_EQ(lhs(w), lhs(s));
        EXPECT_EQ(rhs(w), rhs(s));
    }
    BoundInput bad;
    bad.id = InequalityId::stieltjes_weighted;
    bad.f = Function(t_());
    bad.l = Function(t_());
    bad.u = u;
    EXPECT_THROW(evaluate(bad), SideConditionViolated);
}
