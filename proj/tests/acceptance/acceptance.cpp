// Acceptance checks AC1-AC8. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include "cli.hpp"

#include "ineqcert/literal.hpp"
#include "ineqcert/quadrature.hpp"
#include "ineqcert/report_json.hpp"
#include "ineqcert/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace ineqcert;

namespace {

struct Line {
    bool pass = true;
    std::string detail;
};

void print(const char* id, const Line& l) { std::cout << id << ' ' << (l.pass ? "PASS" : "FAIL") << "  " << l.detail << '\n'; }

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

// AC1 + AC4 share the sweeps
struct SweepSummary {
    Line soundness;
    Line dominance;
};

SweepSummary sweeps(std::uint64_t trials, std::uint64_t seed) {
    SweepSummary out;
    auto t0 = std::chrono::steady_clock::now();
    std::uint64_t violations = 0, errors = 0, dominance = 0, perturbed_trials = 0;
    std::string worst;
    SweepOptions opts;
    for (InequalityId id : all_inequalities()) {
        SweepReport r = sweep(id, trials, seed, {}, opts);
        violations += r.violations;
        errors += r.errors;
        dominance += r.dominance_violations;
        if (is_perturbed(id)) perturbed_trials += r.trials - r.errors;
        if (!r.ok()) worst += std::string(" ") + std::string(to_string(id)) + (r.first_error ? "(" + *r.first_error + ")" : "");
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.soundness.pass = violations == 0 && errors == 0 && secs < 600;
    out.soundness.detail = "17 ids x " + std::to_string(trials) + " trials, seed " + std::to_string(seed) + ": " +
                           std::to_string(violations) + " violations, " + std::to_string(errors) + " errors, " +
                           fmt(secs) + " s (limit 600 s)" + worst;
    out.dominance.pass = dominance == 0 && perturbed_trials > 0;
    out.dominance.detail = std::to_string(dominance) + " dominance failures over " + std::to_string(perturbed_trials) +
                           " perturbed trials (strict unless the range is symmetric)";
    return out;
}

Line sharpness() {
    struct Want {
        InequalityId id;
        Rational lhs;
    };
    const std::vector<Want> six = {{InequalityId::zero_mean, Rational(1)},
                                   {InequalityId::stieltjes, Rational(1)},
                                   {InequalityId::gruss_stieltjes, Rational(1) / 4},
                                   {InequalityId::ostrowski, Rational(1) / 2},
                                   {InequalityId::cheby, Rational(1) / 12},
                                   {InequalityId::ogruss, Rational(1) / 4}};
    auto cases = sharpness_cases();
    Line l;
    int hit = 0;
    for (const Want& w : six) {
        bool found = false;
        for (const auto& c : cases) {
            if (c.id != w.id) continue;
            found = true;
            bool good = c.achieved() && *c.report.ratio.exact == 1 && *c.report.lhs.exact == w.lhs &&
                        *c.report.rhs.exact == w.lhs;
            if (good) ++hit;
            else l.detail += std::string(" ") + std::string(to_string(w.id)) + " lhs=" + to_string(*c.report.lhs.exact) +
                             " rhs=" + to_string(*c.report.rhs.exact);
        }
        if (!found) l.detail += std::string(" missing ") + std::string(to_string(w.id));
    }
    int extra = 0;
    for (const auto& c : cases) extra += c.achieved();
    l.pass = hit == 6;
    l.detail = std::to_string(hit) + "/6 named extremal cases at ratio exactly 1 (" + std::to_string(extra) + "/" +
               std::to_string(cases.size()) + " shipped cases achieved)" + l.detail;
    return l;
}

Line median_consistency(std::uint64_t trials) {
    Line l;
    std::uint64_t checked = 0, mismatched = 0, errors = 0;
    for (InequalityId id : {InequalityId::ostrowski_pert, InequalityId::trapezoid_pert, InequalityId::interior_n_pert,
                            InequalityId::boundary_n_pert}) {
        for (std::uint64_t t = 0; t < trials; ++t) {
            try {
                TrialInstance inst = make_trial(id, 2024, t, {});
                const PiecewisePoly& f = std::get<PiecewisePoly>(*inst.input.f);
                unsigned k = (id == InequalityId::ostrowski_pert || id == InequalityId::trapezoid_pert) ? 1 : inst.input.n;
                RangeBound r = inst.input.range ? *inst.input.range : derivative_range(f, k);
                BoundInput pert = inst.input;
                pert.range = r;
                BoundInput classic = inst.input;
                classic.id = classic_form(id);
                classic.range.reset();
                classic.f = Function(median_shift(f, k, r, ShiftPolynomial(k))); // p = x^k/k!
                ++checked;
                if (*evaluate(pert).lhs.exact != *evaluate(classic).lhs.exact) ++mismatched;
            } catch (const Error& e) {
                ++errors;
                if (l.detail.empty()) l.detail = std::string(" first error: ") + e.what();
            }
        }
    }
    l.pass = mismatched == 0 && errors == 0 && checked == 4 * trials;
    l.detail = std::to_string(checked) + " trials over 4 perturbed ids, " + std::to_string(mismatched) + " mismatches" + l.detail;
    return l;
}

// the kernel as an explicit piecewise polynomial in t
PiecewisePoly kernel_poly(const Rational& x, unsigned n, const Interval& I) {
    Polynomial left = Rational(1) / factorial(n) * Polynomial::shifted_power(I.a(), n);
    Polynomial right = Rational(1) / factorial(n) * Polynomial::shifted_power(I.b(), n);
    if (x == I.a()) return PiecewisePoly(I, right);
    if (x == I.b()) return PiecewisePoly(I, left);
    return PiecewisePoly({I.a(), x, I.b()}, {left, right});
}

Line identities() {
    Line l;
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<int> c(-9, 9), den(1, 7), deg(0, 9), grid(0, 12);
    std::uint64_t residual_checks = 0, nonzero = 0;
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Rational> coeffs;
        for (int i = 0, d = deg(rng); i <= d; ++i) coeffs.push_back(Rational(c(rng)) / Rational(den(rng)));
        Rational a = Rational(c(rng)) / 4;
        Interval I(a, a + Rational(den(rng)) / 2);
        PiecewisePoly f(I, Polynomial(coeffs));
        for (int k = 0; k < 5; ++k) {
            Rational x = I.a() + I.length() * Rational(grid(rng)) / 12;
            for (unsigned n = 1; n <= 4; ++n)
                for (auto v : {IdentityVariant::interior, IdentityVariant::boundary}) {
                    ++residual_checks;
                    if (identity_residual(f, x, n, v) != 0) ++nonzero;
                }
        }
    }
    std::uint64_t kernel_checks = 0, kernel_bad = 0;
    for (const Interval& I : {Interval(0, 1), Interval(Rational(-3, 2), Rational(5, 4))}) {
        for (unsigned n = 1; n <= 6; ++n)
            for (int i = 0; i <= 20; ++i) {
                Rational x = I.a() + I.length() * Rational(i) / 20;
                PiecewisePoly K = kernel_poly(x, n, I);
                KernelIntegrals closed = kernel_integrals(x, n, I);
                RationalBounds abs_int = integrate_abs(K);
                ++kernel_checks;
                if (integrate_exact(K) != closed.signed_integral || !abs_int.is_point() ||
                    abs_int.lo != closed.absolute_integral)
                    ++kernel_bad;
            }
    }
    l.pass = nonzero == 0 && kernel_bad == 0;
    l.detail = std::to_string(residual_checks) + " residuals (500 polys x 5 points, n=1..4, both variants): " + std::to_string(nonzero) +
               " nonzero; " + std::to_string(kernel_checks) + " kernel checks (n<=6, 21-point grid): " +
               std::to_string(kernel_bad) + " mismatches";
    return l;
}

struct Corpus {
    const char* text;
    std::function<double(double)> antiderivative;
};

std::vector<RangeBound> exp_cell_ranges(const Partition& P) {
    std::vector<RangeBound> out;
    for (std::size_t i = 0; i < P.cells(); ++i)
        out.push_back(RangeBound{from_double(std::nextafter(std::exp(to_double(P.points()[i])), 0.0)),
                                 from_double(std::nextafter(std::exp(to_double(P.points()[i + 1])), 10.0)),
                                 Rigor::IntervalEnclosure, false});
    return out;
}

Line certified_integration() {
    const std::vector<Corpus> corpus = {
        {"exp(x)", [](double x) { return std::exp(x); }},
        {"sin(x)", [](double x) { return -std::cos(x); }},
        {"cos(x)", [](double x) { return std::sin(x); }},
        {"exp(-x)", [](double x) { return -std::exp(-x); }},
        {"x*exp(x)", [](double x) { return (x - 1) * std::exp(x); }},
        {"1/(1 + x^2)", [](double x) { return std::atan(x); }},
        {"sqrt(x + 1)", [](double x) { return 2.0 / 3.0 * std::pow(x + 1, 1.5); }},
        {"log(x + 2)", [](double x) { return (x + 2) * std::log(x + 2) - (x + 2); }},
        {"sin(x)^2", [](double x) { return x / 2 - std::sin(2 * x) / 4; }},
        {"cos(x)*exp(sin(x))", [](double x) { return std::exp(std::sin(x)); }},
        {"x^3 - 2*x", [](double x) { return x * x * x * x / 4 - x * x; }},
        {"x^5 + 1/3", [](double x) { return std::pow(x, 6) / 6 + x / 3; }},
    };
    const std::vector<Interval> intervals = {Interval(0, 1), Interval(Rational(-1, 2), Rational(3, 2))};
    std::uint64_t runs = 0, misses = 0;
    std::string first_miss;
    for (const Corpus& c : corpus)
        for (const Interval& I : intervals) {
            Function f = parse_function(c.text, I);
            double a = to_double(I.a()), b = to_double(I.b());
            // truth from the 50-digit oracle, cross-checked against the closed form
            double truth = to_double(oracle_integral(parse(c.text), I));
            double closed = c.antiderivative(b) - c.antiderivative(a);
            if (std::fabs(truth - closed) > 1e-13 * std::max(1.0, std::fabs(closed))) {
                ++misses;
                if (first_miss.empty()) first_miss = std::string(c.text) + ": oracle disagrees with closed form";
            }
            for (unsigned N : {1u, 2u, 4u, 8u, 16u}) {
                Partition P = Partition::uniform(I, N);
                auto check = [&](QuadratureRule rule, unsigned n) {
                    CertifiedIntegral r = certified(f, I, P, rule, n);
                    ++runs;
                    bool inside;
                    if (r.estimate.exact && r.radius.exact) {
                        // polynomial input: compare against the exact integral
                        inside = r.contains(integrate_exact(std::get<PiecewisePoly>(f)));
                    } else {
                        inside = std::fabs(r.estimate.value - truth) <= r.radius.value;
                    }
                    if (!inside) {
                        ++misses;
                        if (first_miss.empty())
                            first_miss = std::string(c.text) + " " + std::string(to_string(rule)) + " n=" +
                                         std::to_string(n) + " N=" + std::to_string(N);
                    }
                };
                check(QuadratureRule::pmid, 1);
                for (unsigned n = 1; n <= 4; ++n) {
                    check(QuadratureRule::interior_n, n);
                    check(QuadratureRule::boundary_n, n);
                }
            }
        }

    const Interval unit(0, 1);
    const double e = std::exp(1.0);
    Function ef = Function(parse("exp(x)"));
    Partition P4 = Partition::uniform(unit, 4);
    double r4 = certified_midpoint(ef, unit, P4, exp_cell_ranges(P4)).radius.value;
    double want = (e - 1) / 128;
    double rel = std::fabs(r4 - want) / want;

    // least-squares slope of log radius and log error against log N
    std::vector<double> lx, lr, le;
    for (unsigned N = 4; N <= 64; N *= 2) {
        Partition P = Partition::uniform(unit, N);
        CertifiedIntegral r = certified_midpoint(ef, unit, P, exp_cell_ranges(P));
        lx.push_back(std::log(static_cast<double>(N)));
        lr.push_back(std::log(r.radius.value));
        le.push_back(std::log(std::fabs(r.estimate.value - (e - 1))));
    }
    auto slope = [&](const std::vector<double>& ys) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ys[i];
        mx /= lx.size();
        my /= lx.size();
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) sxy += (lx[i] - mx) * (ys[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
        return -sxy / sxx;
    };
    double sr = slope(lr), se = slope(le);

    Line l;
    l.pass = misses == 0 && runs >= 300 && corpus.size() >= 10 && rel <= 1e-12 && std::fabs(sr - 2) <= 0.2 &&
             std::fabs(se - 2) <= 0.2;
    l.detail = std::to_string(misses) + "/" + std::to_string(runs) + " runs outside their interval (" +
               std::to_string(corpus.size()) + " functions); exp 4-cell radius rel. error " + fmt(rel) +
               " (limit 1e-12); order slope radius " + fmt(sr) + ", error " + fmt(se) + " (2.0 +- 0.2)";
    if (!first_miss.empty()) l.detail += "; first miss: " + first_miss;
    return l;
}

Line cross_rule() {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> c(-6, 6), deg(0, 7), cells(1, 9), grid(0, 10);
    std::uint64_t checks = 0, bad = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Rational> coeffs;
        for (int i = 0, d = deg(rng); i <= d; ++i) coeffs.push_back(Rational(c(rng)) / 3);
        Interval I(Rational(c(rng)) / 2, Rational(4));
        PiecewisePoly f(I, Polynomial(coeffs));
        Partition P = Partition::uniform(I, static_cast<unsigned>(cells(rng)));
        CertifiedIntegral m = certified_midpoint(Function(f), I, P);
        CertifiedIntegral i1 = certified_nth(Function(f), I, P, 1, IdentityVariant::interior);
        ++checks;
        if (*m.estimate.exact != *i1.estimate.exact || *m.radius.exact != *i1.radius.exact) ++bad;

        Rational x = I.a() + I.length() * Rational(grid(rng)) / 10;
        BoundReport n1 = bound_interior_nth(f, x, 1, true);
        BoundReport os = bound_ostrowski(f, x, true);
        ++checks;
        if (*n1.lhs.exact != I.length() * *os.lhs.exact) ++bad;
    }
    for (const char* text : {"exp(x)", "sin(3*x) + x^2", "sqrt(x + 2)"}) {
        Interval I(0, 1);
        Function f = Function(parse(text));
        Partition P = Partition::uniform(I, 6);
        CertifiedIntegral m = certified_midpoint(f, I, P);
        CertifiedIntegral i1 = certified_nth(f, I, P, 1, IdentityVariant::interior);
        ++checks;
        if (m.estimate.value != i1.estimate.value || m.radius.value != i1.radius.value) ++bad;
    }
    Line l;
    l.pass = bad == 0;
    l.detail = std::to_string(checks) + " checks (interior n=1 vs pmid; n=1 lhs vs (b-a) x perturbed Ostrowski lhs): " +
               std::to_string(bad) + " differ";
    return l;
}

bool exact_round_trips(const nlohmann::json& j, std::string& why) {
    if (j.is_object()) {
        if (j.contains("exact") && j["exact"].is_string()) {
            std::string s = j["exact"];
            if (to_string(parse_rational(s)) != s) {
                why = s;
                return false;
            }
        }
        for (const auto& [k, v] : j.items())
            if (!exact_round_trips(v, why)) return false;
    } else if (j.is_array()) {
        for (const auto& v : j)
            if (!exact_round_trips(v, why)) return false;
    }
    return true;
}

Line cli_contract(const std::string& cli, const std::string& schema, const std::string& python) {
    Line l;
    struct Case {
        std::vector<std::string> args;
        int code;
    };
    const std::vector<Case> cases = {
        {{"bound", "--ineq", "cheby", "--f", "x", "--g", "x", "--a", "0", "--b", "1"}, 0},
        {{"bound", "--ineq", "ostrowski_pert", "--f", "x^2", "--a", "0", "--b", "1", "--x", "1/2"}, 0},
        {{"bound", "--ineq", "gruss", "--f", "x", "--g", "x", "--a", "0", "--b", "1", "--range", "0,1/2"}, 1},
        {{"integrate", "--f", "exp(x)", "--a", "0", "--b", "1", "--cells", "4"}, 0},
        {{"integrate", "--f", "exp(x)", "--a", "0", "--b", "1", "--tol", "1e-12", "--max-cells", "4"}, 3},
        {{"verify", "--ineq", "cheby", "--trials", "25", "--seed", "3"}, 0},
        {{"verify", "--ineq", "bogus"}, 1},
        {{"sharpness"}, 0},
        {{"sharpness", "--format", "csv"}, 0},
    };
    int bad_codes = 0, bad_trips = 0;
    for (const Case& c : cases) {
        std::ostringstream out, err;
        int code = cli::run_cli(c.args, out, err);
        if (code != c.code) ++bad_codes;
        if (code == 1 || c.args.back() == "csv") continue;
        std::string why;
        if (!exact_round_trips(nlohmann::json::parse(out.str()), why)) ++bad_trips;
    }
    std::string schema_note = "schema not checked";
    bool schema_ok = false;
    if (!cli.empty() && !schema.empty()) {
        std::string cmd = python + " " + std::string(INEQCERT_SCHEMA_SCRIPT) + " --schema '" + schema + "' --cli '" + cli +
                          "' > /dev/null 2>&1";
        int status = std::system(cmd.c_str());
        schema_ok = status == 0;
        schema_note = schema_ok ? "schema valid for all commands" : "schema validation failed (status " + std::to_string(status) + ")";
    }
    l.pass = bad_codes == 0 && bad_trips == 0 && schema_ok;
    l.detail = schema_note + "; " + std::to_string(bad_codes) + " unexpected exit codes over " +
               std::to_string(cases.size()) + " commands; " + std::to_string(bad_trips) + " exact values failed to round-trip";
    return l;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ineqcert acceptance checks"};
    std::uint64_t trials = 1000, seed = 1;
    std::string cli, schema, python = "python3";
    app.add_option("--trials", trials, "sweep trials per id");
    app.add_option("--seed", seed, "sweep seed");
    app.add_option("--cli", cli, "path to the ineqcert executable");
    app.add_option("--schema", schema, "path to envelope.schema.json");
    app.add_option("--python", python, "python interpreter with jsonschema");
    CLI11_PARSE(app, argc, argv);

    bool all = true;
    auto report = [&](const char* id, const Line& l) {
        print(id, l);
        all = all && l.pass;
    };
    try {
        SweepSummary s = sweeps(trials, seed);
        report("AC1", s.soundness);
        report("AC2", sharpness());
        report("AC3", median_consistency(500));
        report("AC4", s.dominance);
        report("AC5", identities());
        report("AC6", certified_integration());
        report("AC7", cross_rule());
        report("AC8", cli_contract(cli, schema, python));
    } catch (const std::exception& e) {
        std::cout << "acceptance aborted: " << e.what() << '\n';
        return 1;
    }
    return all ? 0 : 1;
}
