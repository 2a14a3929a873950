#include "ineqcert/report_json.hpp"

#include <cmath>

namespace ineqcert {

using nlohmann::json;

namespace {

std::string decimal(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return to_decimal(v);
}

json strings(const std::vector<std::string>& v) {
    json out = json::array();
    for (const auto& s : v) out.push_back(s);
    return out;
}

json pairs(const std::vector<std::pair<std::string, std::string>>& v) {
    json out = json::object();
    for (const auto& [k, s] : v) out[k] = s;
    return out;
}

} // namespace

std::string_view to_string(FunctionKind k) {
    switch (k) {
    case FunctionKind::piecewise: return "piecewise";
    case FunctionKind::continuous: return "continuous";
    case FunctionKind::zero_mean: return "zero_mean";
    case FunctionKind::closed_bv: return "closed_bv";
    case FunctionKind::open_bv: return "open_bv";
    }
    return "piecewise";
}

json to_json(const Number& n) {
    json out{{"decimal", decimal(n.value)}};
    if (n.exact) out["exact"] = to_string(*n.exact);
    return out;
}

json to_json(const Rational& q) { return to_json(Number::of(q)); }

json to_json(const RangeBound& r) {
    return {{"lo", to_json(r.lo)}, {"hi", to_json(r.hi)}, {"rigor", to_string(r.rigor)}, {"tight", r.tight}};
}

json to_json(const BoundReport& r) {
    json ranges = json::array();
    for (const auto& nr : r.ranges) {
        json j = to_json(nr.range);
        j["name"] = nr.name;
        ranges.push_back(j);
    }
    json out{{"inequality", to_string(r.id)},
             {"a", to_json(r.a)},
             {"b", to_json(r.b)},
             {"lhs", to_json(r.lhs)},
             {"rhs", to_json(r.rhs)},
             {"ratio", to_json(r.ratio)},
             {"perturbation", to_json(r.perturbation)},
             {"holds", r.holds()},
             {"mode", to_string(r.mode)},
             {"rigor", to_string(r.rigor)},
             {"rhs_exact", r.rhs_exact},
             {"ranges", ranges},
             {"warnings", strings(r.warnings)}};
    if (r.x) out["x"] = to_json(*r.x);
    if (r.n) out["n"] = *r.n;
    return out;
}

json to_json(const CertifiedIntegral& c) {
    json partition = json::array();
    for (const auto& p : c.partition) partition.push_back(to_string(p));
    json cells = json::array();
    for (const auto& cell : c.cells)
        cells.push_back({{"lo", to_string(cell.lo)},
                         {"hi", to_string(cell.hi)},
                         {"estimate", to_json(cell.estimate)},
                         {"radius", to_json(cell.radius)},
                         {"range", to_json(cell.range)}});
    return {{"estimate", to_json(c.estimate)},
            {"radius", to_json(c.radius)},
            {"rule", to_string(c.rule)},
            {"n", c.n},
            {"partition", partition},
            {"cells", cells},
            {"mode", to_string(c.mode)},
            {"rigor", to_string(c.rigor)},
            {"converged", c.converged},
            {"warnings", strings(c.warnings)}};
}

json to_json(const TrialDescriptor& d) {
    return {{"trial", d.trial}, {"functions", pairs(d.functions)}, {"parameters", pairs(d.parameters)}};
}

json to_json(const Profile& p) {
    return {{"degree", p.degree},
            {"pieces", p.pieces},
            {"coeff_bound", p.coeff_bound},
            {"kind", to_string(p.kind)},
            {"smoothness", p.smoothness}};
}

json to_json(const SweepReport& s) {
    json out{{"inequality", to_string(s.id)},
             {"trials", s.trials},
             {"seed", s.seed},
             {"profile", to_json(s.profile)},
             {"mode", to_string(s.mode)},
             {"violations", s.violations},
             {"dominance_violations", s.dominance_violations},
             {"median_mismatches", s.median_mismatches},
             {"errors", s.errors},
             {"max_ratio", to_json(s.max_ratio)},
             {"argmax", s.argmax ? to_json(*s.argmax) : json(nullptr)}};
    if (s.first_error) out["first_error"] = *s.first_error;
    json repro = json::array();
    for (const auto& p : s.reproducers) repro.push_back(p.string());
    out["reproducers"] = repro;
    return out;
}

json to_json(const SharpnessCase& s) {
    return {{"inequality", to_string(s.id)},
            {"name", s.name},
            {"construction", to_json(s.construction)},
            {"expected_ratio", to_json(s.expected_ratio)},
            {"achieved_ratio", to_json(s.report.ratio)},
            {"lhs", to_json(s.report.lhs)},
            {"rhs", to_json(s.report.rhs)},
            {"achieved", s.achieved()},
            {"citation", s.citation}};
}

} // namespace ineqcert
