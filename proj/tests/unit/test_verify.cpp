#include "ineqcert/literal.hpp"
#include "ineqcert/report_json.hpp"
#include "ineqcert/verify.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>

using namespace ineqcert;

namespace {

SweepOptions quiet(unsigned threads = 1) {
    SweepOptions o;
    o.threads = threads;
    o.reproducer_dir.reset();
    return o;
}

} // namespace

TEST(RandomFunction, Deterministic) {
    Profile p;
    auto a = std::get<PiecewisePoly>(random_function(42, 0, p));
    auto b = std::get<PiecewisePoly>(random_function(42, 0, p));
    EXPECT_EQ(a, b);
    auto c = std::get<PiecewisePoly>(random_function(42, 1, p));
    EXPECT_FALSE(a == c);
}

TEST(RandomFunction, ZeroMeanProfile) {
    Profile p;
    p.kind = FunctionKind::zero_mean;
    for (std::uint64_t t = 0; t < 200; ++t) {
        auto l = std::get<PiecewisePoly>(random_function(7, t, p));
        ASSERT_EQ(integrate_exact(l), 0) << serialize(l);
        ASSERT_TRUE(l.is_continuous());
    }
}

TEST(RandomFunction, ContinuousProfileSmoothness) {
    Profile p;
    p.kind = FunctionKind::continuous;
    for (unsigned s = 0; s <= 3; ++s) {
        p.smoothness = s;
        for (std::uint64_t t = 0; t < 50; ++t)
            ASSERT_TRUE(std::get<PiecewisePoly>(random_function(3, t, p)).is_continuous(s));
    }
}

TEST(RandomFunction, BVProfiles) {
    Profile p;
    p.kind = FunctionKind::closed_bv;
    for (std::uint64_t t = 0; t < 200; ++t) {
        auto u = std::get<BVFunction>(random_function(11, t, p));
        ASSERT_EQ(u.at_a(), u.at_b()) << serialize(u);
    }
    p.kind = FunctionKind::open_bv;
    for (std::uint64_t t = 0; t < 200; ++t) {
        auto u = std::get<BVFunction>(random_function(11, t, p));
        ASSERT_NE(u.at_a(), u.at_b()) << serialize(u);
    }
}

TEST(Sweep, ChebyAndZeroMean) {
    SweepReport c = sweep(InequalityId::cheby, 1000, 42, {}, quiet(2));
    EXPECT_EQ(c.violations, 0u);
    EXPECT_EQ(c.errors, 0u) << c.first_error.value_or("");
    EXPECT_LE(*c.max_ratio.exact, 1);
    SweepReport z = sweep(InequalityId::zero_mean, 1000, 7, {}, quiet(2));
    EXPECT_EQ(z.violations, 0u);
    EXPECT_TRUE(z.ok()) << z.first_error.value_or("");
}

TEST(Sweep, EmptyReport) {
    SweepReport r = sweep(InequalityId::gruss, 0, 1, {}, quiet());
    EXPECT_EQ(r.trials, 0u);
    EXPECT_EQ(r.max_ratio.value, 0.0);
    EXPECT_FALSE(r.argmax);
    EXPECT_TRUE(r.ok());
}

TEST(Sweep, IndependentOfThreadCount) {
    for (InequalityId id : {InequalityId::ostrowski_pert, InequalityId::stieltjes_weighted, InequalityId::boundary_n_pert}) {
        std::string one = to_json(sweep(id, 120, 5, {}, quiet(1))).dump();
        std::string four = to_json(sweep(id, 120, 5, {}, quiet(4))).dump();
        EXPECT_EQ(one, four) << to_string(id);
    }
}

TEST(Sweep, GrussMaxRatio) {
    SweepReport r = sweep(InequalityId::gruss, 1000, 9, {}, quiet(2));
    EXPECT_TRUE(r.ok());
    EXPECT_LE(*r.max_ratio.exact, 1);
    ASSERT_TRUE(r.argmax);
    // the argmax descriptor rebuilds the same trial
    TrialInstance t = make_trial(InequalityId::gruss, 9, r.argmax->trial, {});
    EXPECT_EQ(*evaluate(t.input).ratio.exact, *r.max_ratio.exact);
}

TEST(Sharpness, AllAchieved) {
    auto cases = sharpness_cases();
    EXPECT_GE(cases.size(), 6u);
    for (const auto& c : cases) EXPECT_TRUE(c.achieved()) << to_string(c.id) << " " << c.name;
    auto find = [&](InequalityId id) {
        for (const auto& c : cases)
            if (c.id == id) return c;
        throw std::runtime_error("missing case");
    };
    SharpnessCase s = find(InequalityId::stieltjes);
    EXPECT_EQ(*s.report.lhs.exact, 1);
    EXPECT_EQ(*s.report.rhs.exact, 1);
    EXPECT_EQ(*find(InequalityId::zero_mean).report.ratio.exact, 1);
    SharpnessCase ch = find(InequalityId::cheby);
    EXPECT_EQ(*ch.report.lhs.exact, Rational(1) / 12);
}

TEST(Oracle, Exp) {
    Rational v = oracle_integral(parse("exp(x)"), Interval(0, 1), 12);
    EXPECT_NEAR(to_double(v), 1.718281828459, 1e-12);
    using HP = boost::multiprecision::cpp_bin_float_50;
    HP want = exp(HP(1)) - 1;
    HP got = HP(to_string(v.get_num()).c_str()) / HP(to_string(v.get_den()).c_str());
    EXPECT_LT(static_cast<double>(abs(got - want)), 1e-14);
}

TEST(Oracle, Polynomials) {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> c(-5, 5), deg(0, 6);
    for (int trial = 0; trial < 200; ++trial) {
        std::string text = std::to_string(c(rng));
        for (int k = 1, d = deg(rng); k <= d; ++k) text += " + " + std::to_string(c(rng)) + "*x^" + std::to_string(k);
        Interval I(Rational(c(rng)) / 4, Rational(2));
        Expr e = parse(text);
        Rational exact = integrate_exact(lower_to_poly(e, I));
        Rational got = oracle_integral(e, I);
        ASSERT_LE(std::fabs(to_double(got - exact)), 1e-12 * std::max(1.0, std::fabs(to_double(exact)))) << text;
    }
}

TEST(Oracle, SineWithRationalPi) {
    using HP = boost::multiprecision::cpp_bin_float_50;
    Interval I(Rational(0), Rational(355) / 113);
    Rational got = oracle_integral(parse("sin(x)"), I);
    HP want = 1 - cos(HP(355) / 113);
    EXPECT_NEAR(to_double(got), static_cast<double>(want), 1e-14);
}

TEST(Reproducer, WrittenAndReadable) {
    auto dir = std::filesystem::temp_directory_path() / "ineqcert-unit-repro";
    std::filesystem::create_directories(dir);
    TrialInstance t = make_trial(InequalityId::cheby, 3, 4, {});
    auto path = write_reproducer(dir, t, evaluate(t.input), 3);
    EXPECT_EQ(path.filename(), "ineqcert-repro-cheby-3-4.json");
    std::ifstream in(path);
    nlohmann::json j = nlohmann::json::parse(in);
    EXPECT_EQ(j["inequality"], "cheby");
    EXPECT_EQ(j["trial"], 4);
    EXPECT_TRUE(j["functions"].contains("f"));
    std::filesystem::remove_all(dir);
}
