#include "cli.hpp"

#include "ineqcert/errors.hpp"
#include "ineqcert/report_json.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

namespace ineqcert::cli {

using nlohmann::json;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

namespace {

json envelope(const std::string& command, json inputs, json result, const std::vector<std::string>& warnings) {
    json w = json::array();
    for (const auto& s : warnings) w.push_back(s);
    return {{"schema_version", "1"}, {"command", command}, {"inputs", std::move(inputs)}, {"result", std::move(result)},
            {"warnings", w}};
}

RangeBound parse_range(const std::string& text, const char* flag) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw PreconditionError(std::string(flag) + " expects lo,hi");
    RangeBound r;
    r.lo = parse_rational(text.substr(0, comma));
    r.hi = parse_rational(text.substr(comma + 1));
    if (r.lo > r.hi) throw InvalidRange(std::string(flag) + ": lo > hi");
    return r;
}

struct Options {
    // shared
    std::string ineq;
    std::string f, g, l, u;
    std::string a, b, x;
    unsigned n = 1;
    bool perturbed = false;
    std::string range, range_g;
    // integrate
    unsigned cells = 0;
    double tol = 0;
    std::string rule = "pmid";
    std::size_t max_cells = 1 << 16;
    bool best_effort = false;
    bool sampled = false;
    // verify
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    Profile profile;
    unsigned threads = 0;
    std::string reproducer_dir = ".";
    // sharpness
    std::string format = "json";
};

/// Records every option that was given on the command line, as strings.
json echo(const CLI::App& sub) {
    json in = json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help") continue;
        std::string name = opt->get_name();
        while (!name.empty() && name.front() == '-') name.erase(name.begin());
        auto results = opt->results();
        in[name] = opt->get_expected_max() == 0 ? json(true) : json(results.size() == 1 ? results[0] : "");
    }
    return in;
}

Interval interval_of(const Options& o) { return {parse_rational(o.a), parse_rational(o.b)}; }

int cmd_bound(const Options& o, const CLI::App& sub, std::ostream& out) {
    InequalityId id = parse_inequality_id(o.ineq);
    if (o.perturbed && !is_perturbed(id)) id = parse_inequality_id(std::string(to_string(id)) + "_pert");
    Interval I = interval_of(o);
    BoundInput in;
    in.id = id;
    in.interval = I;
    in.f = parse_function(o.f, I);
    if (!o.g.empty()) in.g = parse_function(o.g, I);
    if (!o.l.empty()) in.l = parse_function(o.l, I);
    if (!o.u.empty()) in.u = parse_integrator(o.u, I);
    if (!o.x.empty()) in.x = parse_rational(o.x);
    in.n = o.n;
    if (!o.range.empty()) in.range = parse_range(o.range, "--range");
    if (!o.range_g.empty()) in.range_g = parse_range(o.range_g, "--range-g");
    BoundReport rep = evaluate(in);
    out << envelope("bound", echo(sub), to_json(rep), rep.warnings).dump(2) << '\n';
    return rep.holds() ? ok : violation;
}

int cmd_integrate(const Options& o, const CLI::App& sub, std::ostream& out) {
    Interval I = interval_of(o);
    Function f = parse_function(o.f, I);
    QuadratureRule rule = parse_rule(o.rule);
    QuadratureOptions qo;
    qo.best_effort = o.best_effort;
    qo.sampled_ranges = o.sampled;
    CertifiedIntegral c = o.cells > 0 ? certified(f, I, Partition::uniform(I, o.cells), rule, o.n, qo)
                                      : adaptive_integrate(f, I, o.tol, rule, o.n, o.max_cells, qo);
    std::vector<std::string> warnings = c.warnings;
    if (!is_exact(f)) warnings.insert(warnings.begin(), "expression input: evaluated in floating point");
    if (!c.converged) warnings.push_back("tolerance not met within the cell limit");
    out << envelope("integrate", echo(sub), to_json(c), warnings).dump(2) << '\n';
    return c.converged ? ok : tolerance_unmet;
}

int cmd_verify(const Options& o, const CLI::App& sub, std::ostream& out) {
    std::vector<InequalityId> ids;
    if (o.ineq == "all") ids.assign(all_inequalities().begin(), all_inequalities().end());
    else ids.push_back(parse_inequality_id(o.ineq));
    SweepOptions so;
    so.threads = o.threads;
    so.reproducer_dir = o.reproducer_dir;
    json reports = json::array();
    bool clean = true;
    for (auto id : ids) {
        SweepReport r = sweep(id, o.trials, o.seed, o.profile, so);
        clean = clean && r.ok();
        reports.push_back(to_json(r));
    }
    out << envelope("verify", echo(sub), reports, {}).dump(2) << '\n';
    return clean ? ok : violation;
}

int cmd_sharpness(const Options& o, const CLI::App& sub, std::ostream& out) {
    std::optional<InequalityId> filter;
    if (!o.ineq.empty()) filter = parse_inequality_id(o.ineq);
    std::vector<SharpnessCase> cases;
    for (auto& c : sharpness_cases())
        if (!filter || c.id == *filter) cases.push_back(std::move(c));
    bool all = std::all_of(cases.begin(), cases.end(), [](const SharpnessCase& c) { return c.achieved(); });
    if (o.format == "csv") {
        std::ostringstream csv;
        csv << "inequality,name,lhs,rhs,expected_ratio,achieved_ratio,citation\r\n";
        for (const auto& c : cases) {
            auto exact = [](const Number& n) { return n.exact ? to_string(*n.exact) : to_decimal(n.value); };
            csv << csv_field(std::string(to_string(c.id))) << ',' << csv_field(c.name) << ','
                << csv_field(exact(c.report.lhs)) << ',' << csv_field(exact(c.report.rhs)) << ','
                << csv_field(to_string(c.expected_ratio)) << ',' << csv_field(exact(c.report.ratio)) << ','
                << csv_field(c.citation) << "\r\n";
        }
        out << csv.str();
    } else {
        json rows = json::array();
        for (const auto& c : cases) rows.push_back(to_json(c));
        out << envelope("sharpness", echo(sub), rows, {}).dump(2) << '\n';
    }
    return all ? ok : violation;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certified integral inequalities and quadrature", "ineqcert"};
    app.require_subcommand(1);
    Options o;

    auto* bound = app.add_subcommand("bound", "Evaluate both sides of an inequality");
    bound->add_option("--ineq", o.ineq, "Inequality id")->required();
    bound->add_option("--f", o.f, "Expression or pw[...] literal")->required();
    bound->add_option("--g", o.g, "Second function");
    bound->add_option("--l", o.l, "Weight function");
    bound->add_option("--u", o.u, "Integrator: bv[...] literal or polynomial");
    bound->add_option("--a", o.a, "Left endpoint")->required();
    bound->add_option("--b", o.b, "Right endpoint")->required();
    bound->add_option("--x", o.x, "Evaluation point (default: midpoint)");
    bound->add_option("--n", o.n, "Order of the expansion")->check(CLI::PositiveNumber);
    bound->add_flag("--perturbed", o.perturbed, "Use the perturbed form");
    bound->add_option("--range", o.range, "lo,hi bounds for f (or the derivative the inequality uses)");
    bound->add_option("--range-g", o.range_g, "lo,hi bounds for g (g' for cheby)");

    auto* integ = app.add_subcommand("integrate", "Certified integral: estimate and radius");
    integ->add_option("--f", o.f, "Expression or pw[...] literal")->required();
    integ->add_option("--a", o.a, "Left endpoint")->required();
    integ->add_option("--b", o.b, "Right endpoint")->required();
    auto* cells = integ->add_option("--cells", o.cells, "Uniform cells")->check(CLI::PositiveNumber);
    auto* tol = integ->add_option("--tol", o.tol, "Target radius (adaptive)")->check(CLI::PositiveNumber);
    cells->excludes(tol);
    integ->add_option("--rule", o.rule, "pmid, interior_n or boundary_n");
    integ->add_option("--n", o.n, "Order for interior_n and boundary_n")->check(CLI::PositiveNumber);
    integ->add_option("--max-cells", o.max_cells, "Cell limit for --tol")->check(CLI::PositiveNumber);
    integ->add_flag("--best-effort", o.best_effort, "Allow non-rigorous sampled ranges");
    integ->add_flag("--sampled", o.sampled, "Use sampled ranges for expressions (needs --best-effort)");

    auto* ver = app.add_subcommand("verify", "Randomized soundness sweeps in exact arithmetic");
    ver->add_option("--ineq", o.ineq, "Inequality id or 'all'")->required();
    ver->add_option("--trials", o.trials, "Trials per inequality");
    ver->add_option("--seed", o.seed, "Seed");
    ver->add_option("--degree", o.profile.degree, "Maximum piece degree");
    ver->add_option("--pieces", o.profile.pieces, "Maximum piece count")->check(CLI::PositiveNumber);
    ver->add_option("--coeff-bound", o.profile.coeff_bound, "Coefficient numerator bound")->check(CLI::PositiveNumber);
    ver->add_option("--threads", o.threads, "Worker threads (default: INEQCERT_THREADS or all cores)");
    ver->add_option("--reproducer-dir", o.reproducer_dir, "Where violating trials are written");

    auto* sharp = app.add_subcommand("sharpness", "Extremal instances with ratio exactly 1");
    sharp->add_option("--ineq", o.ineq, "Only this inequality");
    sharp->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    std::vector<const char*> argv{"ineqcert"};
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    std::ostringstream buffer;
    int code = usage;
    try {
        if (*bound) code = cmd_bound(o, *bound, buffer);
        else if (*integ) {
            if (o.cells == 0 && o.tol == 0) throw PreconditionError("integrate needs --cells or --tol");
            code = cmd_integrate(o, *integ, buffer);
        } else if (*ver) code = cmd_verify(o, *ver, buffer);
        else code = cmd_sharpness(o, *sharp, buffer);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    out << buffer.str() << std::flush;
    return code;
}

} // namespace ineqcert::cli
