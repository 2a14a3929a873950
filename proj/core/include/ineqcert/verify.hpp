#pragma once

#include "ineqcert/inequalities.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ineqcert {

enum class FunctionKind {
    piecewise,      // arbitrary piecewise polynomial, may jump
    continuous,     // C^smoothness across breakpoints
    zero_mean,      // continuous piecewise polynomial with integral exactly 0
    closed_bv,      // BV integrator with u(a) = u(b)
    open_bv,        // BV integrator with u(a) != u(b)
};

struct Profile {
    unsigned degree = 4;
    unsigned pieces = 3;
    unsigned coeff_bound = 5;
    FunctionKind kind = FunctionKind::piecewise;
    unsigned smoothness = 0; // continuous kind: derivatives 0..smoothness agree at breakpoints
};

using RandomFunction = std::variant<PiecewisePoly, BVFunction>;

/// Deterministic in (seed, trial, profile); the interval is drawn as well.
RandomFunction random_function(std::uint64_t seed, std::uint64_t trial, const Profile& profile);
/// Same, on a given interval.
RandomFunction random_function(std::uint64_t seed, std::uint64_t trial, const Profile& profile, const Interval& I);

/// One sweep trial: the evaluated input plus everything needed to rebuild it.
struct TrialInstance {
    std::uint64_t trial = 0;
    BoundInput input;
};

/// The trial's functions and parameters as strings, for reports and reproducers.
struct TrialDescriptor {
    std::uint64_t trial = 0;
    std::vector<std::pair<std::string, std::string>> functions;
    std::vector<std::pair<std::string, std::string>> parameters;
};

TrialInstance make_trial(InequalityId id, std::uint64_t seed, std::uint64_t trial, const Profile& profile);
TrialDescriptor describe(const TrialInstance& t);

struct SweepOptions {
    /// 0: INEQCERT_THREADS, else the hardware concurrency.
    unsigned threads = 0;
    /// Where reproducer files go; none are written when empty.
    std::optional<std::filesystem::path> reproducer_dir = std::filesystem::path(".");
};

struct SweepReport {
    InequalityId id = InequalityId::zero_mean;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    Profile profile;
    NumericMode mode = NumericMode::Exact;
    std::uint64_t violations = 0;
    /// Perturbed ids only: rhs_perturbed > rhs_classic, or equal although the range is not symmetric.
    std::uint64_t dominance_violations = 0;
    /// Perturbed ids with a shift-polynomial form: perturbed lhs != classic lhs of the median-shifted f.
    std::uint64_t median_mismatches = 0;
    /// Trials that raised instead of evaluating.
    std::uint64_t errors = 0;
    std::optional<std::string> first_error;
    Number max_ratio;
    std::optional<TrialDescriptor> argmax;
    std::vector<std::filesystem::path> reproducers;

    bool ok() const { return violations == 0 && dominance_violations == 0 && median_mismatches == 0 && errors == 0; }
};

/// Runs `trials` exact-mode instances; the report does not depend on the thread count.
SweepReport sweep(InequalityId id, std::uint64_t trials, std::uint64_t seed, const Profile& profile = {},
                  const SweepOptions& options = {});

/// Thread count from INEQCERT_THREADS, else the hardware concurrency (at least 1).
unsigned default_threads();

struct SharpnessCase {
    InequalityId id = InequalityId::zero_mean;
    std::string name;
    TrialDescriptor construction;
    Rational expected_ratio{1};
    BoundReport report;
    std::string citation;

    bool achieved() const { return report.ratio.exact && *report.ratio.exact == expected_ratio; }
};

/// The extremal instances, evaluated exactly.
std::vector<SharpnessCase> sharpness_cases();

/// High-precision integral of e over I: Gauss-Kronrod and Romberg in 50-digit arithmetic must agree
/// to `digits` significant digits, else NonConvergent. Returned as the exact rational of the result.
Rational oracle_integral(const Expr& e, const Interval& I, unsigned digits = 15);

/// JSON reproducer for a violating trial; returns the path written.
std::filesystem::path write_reproducer(const std::filesystem::path& dir, const TrialInstance& t, const BoundReport& r,
                                       std::uint64_t seed);

} // namespace ineqcert
