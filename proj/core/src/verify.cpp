#include "ineqcert/verify.hpp"

#include "ineqcert/errors.hpp"
#include "ineqcert/literal.hpp"
#include "ineqcert/report_json.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <random>
#include <thread>

namespace ineqcert {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// One independent stream per (seed, trial, role).
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream)
        : eng_(splitmix(seed ^ splitmix(trial ^ splitmix(stream + 0x51ed27ULL)))) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
    bool coin() { return uniform(0, 1) == 1; }
    Rational coeff(unsigned bound) {
        long b = static_cast<long>(bound);
        return Rational(uniform(-b, b)) / Rational(uniform(1, 4));
    }

private:
    std::mt19937_64 eng_;
};

Interval random_interval(Rng& rng) {
    static const Rational lengths[] = {Rational(1) / 2, Rational(1), Rational(2), Rational(3)};
    Rational a = Rational(rng.uniform(-2, 1)) + Rational(rng.uniform(0, 1)) / 2;
    return {a, a + lengths[rng.uniform(0, 3)]};
}

Polynomial random_poly(Rng& rng, unsigned degree, unsigned bound) {
    long d = rng.uniform(0, static_cast<long>(degree));
    std::vector<Rational> c;
    for (long i = 0; i <= d; ++i) c.push_back(rng.coeff(bound));
    return Polynomial(std::move(c));
}

/// Grid points a + L i/16 strictly inside I, sorted, `count` of them.
std::vector<Rational> interior_points(Rng& rng, const Interval& I, unsigned count) {
    std::vector<long> idx;
    while (idx.size() < std::min(count, 15u)) {
        long i = rng.uniform(1, 15);
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
    }
    std::sort(idx.begin(), idx.end());
    std::vector<Rational> pts;
    for (long i : idx) pts.push_back(I.a() + I.length() * Rational(i) / 16);
    return pts;
}

std::vector<Rational> random_breaks(Rng& rng, const Interval& I, unsigned pieces) {
    std::vector<Rational> br{I.a()};
    for (auto& t : interior_points(rng, I, static_cast<unsigned>(rng.uniform(1, std::max(1u, pieces))) - 1))
        br.push_back(t);
    br.push_back(I.b());
    return br;
}

Polynomial taylor(const Polynomial& p, const Rational& t, unsigned order) {
    Polynomial out;
    for (unsigned k = 0; k <= order; ++k)
        out += Polynomial::shifted_power(t, k) * Rational(p.derivative(k)(t) / factorial(k));
    return out;
}

PiecewisePoly random_piecewise(Rng& rng, const Interval& I, const Profile& p) {
    auto br = random_breaks(rng, I, p.pieces);
    std::vector<Polynomial> pieces;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) pieces.push_back(random_poly(rng, p.degree, p.coeff_bound));
    return PiecewisePoly(std::move(br), std::move(pieces));
}

/// Each piece continues the previous one's Taylor polynomial of order s plus (x - t)^(s+1) q.
PiecewisePoly random_smooth(Rng& rng, const Interval& I, const Profile& p, unsigned s) {
    auto br = random_breaks(rng, I, p.pieces);
    std::vector<Polynomial> pieces{random_poly(rng, std::max(p.degree, s + 1), p.coeff_bound)};
    unsigned tail = p.degree > s + 1 ? p.degree - s - 1 : 0;
    for (std::size_t i = 1; i + 1 < br.size(); ++i)
        pieces.push_back(taylor(pieces.back(), br[i], s) +
                         Polynomial::shifted_power(br[i], s + 1) * random_poly(rng, tail, p.coeff_bound));
    return PiecewisePoly(std::move(br), std::move(pieces));
}

BVFunction random_bv(Rng& rng, const Interval& I, const Profile& p, bool closed) {
    PiecewisePoly base = random_piecewise(rng, I, p);
    std::vector<JumpRecord> recs;
    Rational ua = base(I.a());
    if (rng.coin()) {
        ua = rng.coeff(p.coeff_bound);
        recs.push_back({I.a(), ua, ua, base.right_limit(I.a())});
    }
    for (const auto& t : interior_points(rng, I, static_cast<unsigned>(rng.uniform(0, 2))))
        recs.push_back({t, base.left_limit(t), rng.coeff(p.coeff_bound), base.right_limit(t)});
    Rational ub = closed ? ua : rng.coeff(p.coeff_bound);
    if (!closed && ub == ua) ub += 1;
    if (ub != base(I.b()) || closed) recs.push_back({I.b(), base.left_limit(I.b()), ub, ub});
    return BVFunction(std::move(base), std::move(recs));
}

RandomFunction generate(Rng& rng, const Profile& p, const Interval& I) {
    if (p.degree == 0 && p.kind == FunctionKind::continuous && p.smoothness > 0)
        throw PreconditionError("profile: smoothness needs degree above it");
    if (p.pieces == 0 || p.coeff_bound == 0) throw PreconditionError("profile bounds must be positive");
    switch (p.kind) {
    case FunctionKind::piecewise: return random_piecewise(rng, I, p);
    case FunctionKind::continuous: return random_smooth(rng, I, p, p.smoothness);
    case FunctionKind::zero_mean: {
        PiecewisePoly f = random_smooth(rng, I, p, 0);
        return f - Polynomial::constant(integrate_exact(f) / I.length());
    }
    case FunctionKind::closed_bv: return random_bv(rng, I, p, true);
    case FunctionKind::open_bv: return random_bv(rng, I, p, false);
    }
    throw PreconditionError("unknown profile kind");
}

enum Stream : std::uint64_t { s_interval = 1, s_f, s_g, s_l, s_u, s_params, s_shift };

PiecewisePoly pw(Rng rng, const Profile& base, FunctionKind kind, const Interval& I, unsigned smooth = 0) {
    Profile p = base;
    p.kind = kind;
    p.smoothness = smooth;
    return std::get<PiecewisePoly>(generate(rng, p, I));
}

BVFunction bv(Rng rng, const Profile& base, bool closed, const Interval& I) {
    Profile p = base;
    p.kind = closed ? FunctionKind::closed_bv : FunctionKind::open_bv;
    return std::get<BVFunction>(generate(rng, p, I));
}

/// Order of the derivative whose range the (perturbed) inequality uses.
unsigned range_order(const BoundInput& in) {
    switch (classic_form(in.id)) {
    case InequalityId::ostrowski:
    case InequalityId::trapezoid:
    case InequalityId::ogruss: return 1;
    case InequalityId::interior_n:
    case InequalityId::boundary_n: return in.n;
    default: return 0;
    }
}

bool has_shift_form(InequalityId id) {
    return id == InequalityId::ostrowski_pert || id == InequalityId::trapezoid_pert ||
           id == InequalityId::interior_n_pert || id == InequalityId::boundary_n_pert;
}

struct Outcome {
    Number ratio;
    bool violation = false;
    bool dominance_bad = false;
    bool median_bad = false;
    std::optional<std::string> error;
};

bool number_less(const Number& x, const Number& y) {
    if (x.exact && y.exact) return *x.exact < *y.exact;
    return x.value < y.value;
}

Outcome run_trial(InequalityId id, std::uint64_t seed, std::uint64_t trial, const Profile& profile) {
    Outcome o;
    try {
        TrialInstance t = make_trial(id, seed, trial, profile);
        BoundReport rep = evaluate(t.input);
        o.ratio = rep.ratio;
        o.violation = !rep.holds();
        if (is_perturbed(id)) {
            const PiecewisePoly& f = std::get<PiecewisePoly>(*t.input.f);
            unsigned k = range_order(t.input);
            RangeBound r = derivative_range(f, k);
            BoundInput classic = t.input;
            classic.id = classic_form(id);
            BoundReport crep = evaluate(classic);
            const Rational& rp = *rep.rhs.exact;
            const Rational& rc = *crep.rhs.exact;
            bool symmetric = r.lo == -r.hi;
            o.dominance_bad = rp > rc || (!symmetric && sgn(rc) > 0 && rp == rc);
            if (has_shift_form(id)) {
                Rng rng(seed, trial, s_shift);
                std::vector<Rational> lower;
                for (unsigned i = 0; i < k; ++i) lower.push_back(rng.coeff(profile.coeff_bound));
                BoundInput shifted = classic;
                shifted.f = median_shift(f, k, r, ShiftPolynomial(k, std::move(lower)));
                shifted.range.reset();
                BoundReport srep = evaluate(shifted);
                o.median_bad = *srep.lhs.exact != *rep.lhs.exact;
            }
        }
    } catch (const Error& e) {
        o.error = std::string(e.what());
    }
    return o;
}

} // namespace

RandomFunction random_function(std::uint64_t seed, std::uint64_t trial, const Profile& profile) {
    Rng ri(seed, trial, s_interval);
    Interval I = random_interval(ri);
    Rng rng(seed, trial, s_f);
    return generate(rng, profile, I);
}

RandomFunction random_function(std::uint64_t seed, std::uint64_t trial, const Profile& profile, const Interval& I) {
    Rng rng(seed, trial, s_f);
    return generate(rng, profile, I);
}

TrialInstance make_trial(InequalityId id, std::uint64_t seed, std::uint64_t trial, const Profile& profile) {
    using Id = InequalityId;
    Rng ri(seed, trial, s_interval);
    Interval I = random_interval(ri);
    Rng params(seed, trial, s_params);
    auto rf = [&](FunctionKind k, unsigned s = 0) { return pw(Rng(seed, trial, s_f), profile, k, I, s); };
    auto rg = [&](FunctionKind k) { return pw(Rng(seed, trial, s_g), profile, k, I); };
    auto rl = [&](FunctionKind k) { return pw(Rng(seed, trial, s_l), profile, k, I); };
    auto ru = [&](bool closed) { return bv(Rng(seed, trial, s_u), profile, closed, I); };

    BoundInput in;
    in.id = id;
    in.interval = I;
    in.x = I.a() + I.length() * Rational(params.uniform(0, 8)) / 8;
    switch (classic_form(id)) {
    case Id::zero_mean:
        in.f = rf(FunctionKind::piecewise);
        in.l = rl(FunctionKind::zero_mean);
        break;
    case Id::gruss_mean:
    case Id::gruss:
        in.f = rf(FunctionKind::piecewise);
        in.g = rg(FunctionKind::piecewise);
        break;
    case Id::stieltjes:
        in.f = rf(FunctionKind::continuous);
        in.u = ru(true);
        break;
    case Id::stieltjes_weighted: {
        in.f = rf(FunctionKind::continuous);
        BVFunction u = ru(false);
        PiecewisePoly l = rl(FunctionKind::continuous);
        Rational shift = stieltjes_integral(l, u) / (u.at_b() - u.at_a());
        in.l = l - Polynomial::constant(shift);
        in.u = std::move(u);
        break;
    }
    case Id::gruss_stieltjes:
        in.f = rf(FunctionKind::continuous);
        in.g = rg(FunctionKind::continuous);
        in.u = ru(false);
        break;
    case Id::ostrowski:
    case Id::trapezoid: in.f = rf(FunctionKind::continuous); break;
    case Id::ogruss:
        in.f = rf(FunctionKind::continuous);
        in.g = rg(FunctionKind::piecewise);
        break;
    case Id::cheby:
        in.f = rf(FunctionKind::continuous);
        in.g = rg(FunctionKind::continuous);
        break;
    case Id::interior_n:
    case Id::boundary_n:
        in.n = static_cast<unsigned>(params.uniform(1, 4));
        in.f = rf(FunctionKind::continuous, in.n - 1);
        break;
    default: throw UnknownInequality("unknown inequality");
    }
    return {trial, std::move(in)};
}

TrialDescriptor describe(const TrialInstance& t) {
    TrialDescriptor d;
    d.trial = t.trial;
    const BoundInput& in = t.input;
    if (in.f) d.functions.emplace_back("f", serialize(*in.f));
    if (in.g) d.functions.emplace_back("g", serialize(*in.g));
    if (in.l) d.functions.emplace_back("l", serialize(*in.l));
    if (in.u) d.functions.emplace_back("u", serialize(*in.u));
    d.parameters.emplace_back("a", to_string(in.interval.a()));
    d.parameters.emplace_back("b", to_string(in.interval.b()));
    if (in.x) d.parameters.emplace_back("x", to_string(*in.x));
    d.parameters.emplace_back("n", std::to_string(in.n));
    return d;
}

unsigned default_threads() {
    if (const char* env = std::getenv("INEQCERT_THREADS")) {
        unsigned v = 0;
        std::string_view s(env);
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && p == s.data() + s.size() && v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SweepReport sweep(InequalityId id, std::uint64_t trials, std::uint64_t seed, const Profile& profile,
                  const SweepOptions& options) {
    if (profile.degree == 0 && (id == InequalityId::interior_n || id == InequalityId::boundary_n))
        throw PreconditionError("profile degree must be positive");
    if (profile.pieces == 0 || profile.coeff_bound == 0) throw PreconditionError("profile bounds must be positive");
    SweepReport rep;
    rep.id = id;
    rep.trials = trials;
    rep.seed = seed;
    rep.profile = profile;
    rep.max_ratio = Number::of(Rational(0));

    std::vector<Outcome> outcomes(trials);
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t i; (i = next.fetch_add(1)) < trials;) outcomes[i] = run_trial(id, seed, i, profile);
    };
    unsigned threads = options.threads ? options.threads : default_threads();
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(trials, 1)));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }

    std::optional<std::uint64_t> argmax;
    std::vector<std::uint64_t> violating;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const Outcome& o = outcomes[i];
        if (o.error) {
            ++rep.errors;
            if (!rep.first_error) rep.first_error = "trial " + std::to_string(i) + ": " + *o.error;
            continue;
        }
        if (o.violation) {
            ++rep.violations;
            violating.push_back(i);
        }
        if (o.dominance_bad) ++rep.dominance_violations;
        if (o.median_bad) ++rep.median_mismatches;
        if (!argmax || number_less(rep.max_ratio, o.ratio)) {
            rep.max_ratio = o.ratio;
            argmax = i;
        }
    }
    if (argmax) rep.argmax = describe(make_trial(id, seed, *argmax, profile));
    if (options.reproducer_dir) {
        for (auto i : violating) {
            TrialInstance t = make_trial(id, seed, i, profile);
            rep.reproducers.push_back(write_reproducer(*options.reproducer_dir, t, evaluate(t.input), seed));
        }
    }
    return rep;
}

std::filesystem::path write_reproducer(const std::filesystem::path& dir, const TrialInstance& t, const BoundReport& r,
                                       std::uint64_t seed) {
    TrialDescriptor d = describe(t);
    nlohmann::json j{{"inequality", to_string(t.input.id)},
                     {"seed", seed},
                     {"trial", t.trial},
                     {"functions", to_json(d)["functions"]},
                     {"parameters", to_json(d)["parameters"]},
                     {"lhs", to_json(r.lhs)},
                     {"rhs", to_json(r.rhs)}};
    std::filesystem::create_directories(dir);
    auto path = dir / ("ineqcert-repro-" + std::string(to_string(t.input.id)) + "-" + std::to_string(seed) + "-" +
                       std::to_string(t.trial) + ".json");
    std::ofstream out(path);
    out << j.dump(2) << '\n';
    if (!out) throw PreconditionError("cannot write reproducer " + path.string());
    return path;
}

namespace {

PiecewisePoly step(const Interval& I, const Rational& left, const Rational& right) {
    return PiecewisePoly({I.a(), I.mid(), I.b()}, {Polynomial::constant(left), Polynomial::constant(right)});
}

PiecewisePoly identity(const Interval& I) { return PiecewisePoly(I, Polynomial({Rational(0), Rational(1)})); }

SharpnessCase make_case(std::string name, BoundInput in, std::string citation) {
    SharpnessCase c;
    c.id = in.id;
    c.name = std::move(name);
    c.construction = describe({0, in});
    c.report = evaluate(in);
    c.citation = std::move(citation);
    return c;
}

} // namespace

std::vector<SharpnessCase> sharpness_cases() {
    using Id = InequalityId;
    Interval I(Rational(0), Rational(1));
    PiecewisePoly t = identity(I);
    PiecewisePoly s = step(I, -1, 1);
    std::vector<SharpnessCase> out;

    BoundInput in;
    in.interval = I;

    in.id = Id::zero_mean;
    in.f = s;
    in.l = s;
    out.push_back(make_case("step pair", in, "zero-mean weight, f = l = -1 then +1: constant 1/2 is sharp"));

    in = {};
    in.id = Id::stieltjes;
    in.f = t;
    in.u = BVFunction(PiecewisePoly(I, Polynomial::constant(1)),
                      {{Rational(0), 0, 0, 1}, {Rational(1), 1, 0, 0}});
    out.push_back(make_case("indicator integrator", in,
                            "f = t, u = 1 on (0,1) and 0 at both ends: integral -1, variation 2"));

    in = {};
    in.id = Id::gruss_stieltjes;
    in.f = t;
    in.g = t;
    in.u = BVFunction(PiecewisePoly(I, Polynomial::constant(0)),
                      {{Rational(0), -1, -1, 0}, {Rational(1), 0, 1, 1}});
    out.push_back(make_case("three-point integrator", in,
                            "f = g = t, u = -1 at a, 0 inside, 1 at b: constant 1/2 is sharp"));

    in = {};
    in.id = Id::ostrowski;
    in.f = t;
    in.x = I.b();
    out.push_back(make_case("linear at the endpoint", in, "f = t at x = b: Ostrowski constant is attained"));

    in = {};
    in.id = Id::cheby;
    in.f = t;
    in.g = t;
    out.push_back(make_case("identity pair", in, "f = g = t: constant 1/12 is sharp"));

    in = {};
    in.id = Id::ogruss;
    in.f = t;
    in.g = s;
    out.push_back(make_case("linear and step", in, "f = t, g = -1 then +1: constant 1/8 is sharp"));

    in = {};
    in.id = Id::gruss;
    in.f = s;
    in.g = s;
    out.push_back(make_case("step with itself", in, "f = g = -1 then +1: Gruss constant 1/4 is sharp"));

    in = {};
    in.id = Id::gruss_mean;
    in.f = s;
    in.g = s;
    out.push_back(make_case("step with itself, mean form", in, "f = g = -1 then +1: constant 1/2 is attained"));

    in = {};
    in.id = Id::trapezoid;
    in.f = t;
    in.x = I.a();
    out.push_back(make_case("linear at the left end", in, "f = t at x = a: trapezoid constant is attained"));
    return out;
}

Rational oracle_integral(const Expr& e, const Interval& I, unsigned digits) {
    using HP = boost::multiprecision::cpp_bin_float_50;
    if (digits == 0 || digits > 40) throw PreconditionError("oracle digits must be in 1..40");
    auto from_rational = [](const Rational& q) { return HP(q.get_num().get_str()) / HP(q.get_den().get_str()); };
    auto f = [&](const HP& x) { return eval_as<HP>(e, x, from_rational); };
    HP a = from_rational(I.a());
    HP b = from_rational(I.b());
    HP tol = pow(HP(10), -static_cast<int>(digits) - 5);

    HP gk = boost::math::quadrature::gauss_kronrod<HP, 61>::integrate(f, a, b, 15, tol);

    // Romberg: trapezoid sums with Richardson extrapolation
    std::vector<HP> prev{(b - a) * (f(a) + f(b)) / 2};
    HP romberg = prev[0];
    bool settled = false;
    for (unsigned level = 1; level <= 18 && !settled; ++level) {
        std::uint64_t m = std::uint64_t(1) << (level - 1);
        HP h = (b - a) / HP(2 * m);
        HP sum = 0;
        for (std::uint64_t i = 0; i < m; ++i) sum += f(a + h * HP(2 * i + 1));
        std::vector<HP> row{prev[0] / 2 + h * sum};
        HP p4 = 1;
        for (unsigned k = 1; k <= level; ++k) {
            p4 *= 4;
            row.push_back(row[k - 1] + (row[k - 1] - prev[k - 1]) / (p4 - 1));
        }
        HP scale = std::max(HP(1), HP(abs(row.back())));
        settled = level >= 3 && abs(row.back() - prev.back()) <= tol * scale;
        romberg = row.back();
        prev = std::move(row);
    }
    HP scale = std::max(HP(abs(gk)), HP(1e-30));
    if (!settled || abs(gk - romberg) > pow(HP(10), -static_cast<int>(digits)) * scale)
        throw NonConvergent("oracle quadratures disagree beyond " + std::to_string(digits) + " digits");
    return parse_rational(gk.str(45, std::ios_base::scientific));
}

} // namespace ineqcert
