#include "ineqcert/real_interval.hpp"

#include "ineqcert/errors.hpp"

#include <algorithm>
#include <array>

namespace ineqcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double x, int ulps = 1) {
    if (std::isnan(x)) return -kInf;
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -kInf);
    return x;
}

double up(double x, int ulps = 1) {
    if (std::isnan(x)) return kInf;
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, kInf);
    return x;
}

// Exact product detection keeps point intervals tight where no rounding happened.
double prod_down(double a, double b) {
    double p = a * b;
    if (p == 0.0 && (a == 0.0 || b == 0.0)) return 0.0;
    return std::fma(a, b, -p) == 0.0 && std::isfinite(p) ? p : down(p);
}

double prod_up(double a, double b) {
    double p = a * b;
    if (p == 0.0 && (a == 0.0 || b == 0.0)) return 0.0;
    return std::fma(a, b, -p) == 0.0 && std::isfinite(p) ? p : up(p);
}

double sum_down(double a, double b) {
    double s = a + b;
    if (!std::isfinite(s)) return s;
    // TwoSum error term: zero means the sum is exact.
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return err >= 0.0 ? s : down(s);
}

double sum_up(double a, double b) {
    double s = a + b;
    if (!std::isfinite(s)) return s;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return err <= 0.0 ? s : up(s);
}

// pi is bracketed by the double nearest to it and its successor.
const double kPiLo = 3.141592653589793;
const double kPiHi = std::nextafter(3.141592653589793, 4.0);

// Whether some point offset + k*period (k integer) may lie in [lo, hi]; conservative.
bool may_hit(double lo, double hi, double offset_lo, double offset_hi, double period_lo, double period_hi) {
    double kmin = std::floor((lo - offset_hi) / period_hi) - 1;
    double kmax = std::ceil((hi - offset_lo) / period_lo) + 1;
    if (kmax - kmin > 8) return true;
    for (double k = kmin; k <= kmax; k += 1) {
        double plo = k >= 0 ? sum_down(offset_lo, prod_down(k, period_lo)) : sum_down(offset_lo, prod_down(k, period_hi));
        double phi = k >= 0 ? sum_up(offset_hi, prod_up(k, period_hi)) : sum_up(offset_hi, prod_up(k, period_lo));
        if (phi >= lo && plo <= hi) return true;
    }
    return false;
}

RealInterval periodic_range(const RealInterval& x, double (*fn)(double), double max_offset_lo, double max_offset_hi,
                            double min_offset_lo, double min_offset_hi) {
    if (!std::isfinite(x.lo()) || !std::isfinite(x.hi())) return {-1.0, 1.0};
    const double two_pi_lo = 2 * kPiLo;
    const double two_pi_hi = 2 * kPiHi;
    if (x.width() >= two_pi_lo) return {-1.0, 1.0};
    double a = fn(x.lo());
    double b = fn(x.hi());
    double lo = std::max(-1.0, down(std::min(a, b), 2));
    double hi = std::min(1.0, up(std::max(a, b), 2));
    if (may_hit(x.lo(), x.hi(), max_offset_lo, max_offset_hi, two_pi_lo, two_pi_hi)) hi = 1.0;
    if (may_hit(x.lo(), x.hi(), min_offset_lo, min_offset_hi, two_pi_lo, two_pi_hi)) lo = -1.0;
    return {lo, hi};
}

} // namespace

RealInterval::RealInterval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) throw DomainError("invalid interval");
}

double add_up(double a, double b) { return sum_up(a, b); }
double mul_up(double a, double b) { return prod_up(a, b); }

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
    return {sum_down(a.lo_, b.lo_), sum_up(a.hi_, b.hi_)};
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
    return {sum_down(a.lo_, -b.hi_), sum_up(a.hi_, -b.lo_)};
}

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
    std::array<double, 4> lows{prod_down(a.lo_, b.lo_), prod_down(a.lo_, b.hi_), prod_down(a.hi_, b.lo_),
                               prod_down(a.hi_, b.hi_)};
    std::array<double, 4> highs{prod_up(a.lo_, b.lo_), prod_up(a.lo_, b.hi_), prod_up(a.hi_, b.lo_),
                                prod_up(a.hi_, b.hi_)};
    for (auto& v : lows)
        if (std::isnan(v)) v = -kInf;
    for (auto& v : highs)
        if (std::isnan(v)) v = kInf;
    return {*std::min_element(lows.begin(), lows.end()), *std::max_element(highs.begin(), highs.end())};
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
    if (b.contains_zero()) throw DomainError("division by an interval containing zero");
    auto quot = [](double x, double y, bool round_upward) {
        double q = x / y;
        if (!std::isfinite(q)) return q;
        // Exact when the remainder vanishes.
        if (std::fma(-q, y, x) == 0.0) return q;
        return round_upward ? up(q) : down(q);
    };
    std::array<double, 4> lows{quot(a.lo_, b.lo_, false), quot(a.lo_, b.hi_, false), quot(a.hi_, b.lo_, false),
                               quot(a.hi_, b.hi_, false)};
    std::array<double, 4> highs{quot(a.lo_, b.lo_, true), quot(a.lo_, b.hi_, true), quot(a.hi_, b.lo_, true),
                                quot(a.hi_, b.hi_, true)};
    return {*std::min_element(lows.begin(), lows.end()), *std::max_element(highs.begin(), highs.end())};
}

RealInterval sin(const RealInterval& x) {
    // max at pi/2 + 2k*pi, min at -pi/2 + 2k*pi
    return periodic_range(x, [](double v) { return std::sin(v); }, kPiLo / 2, kPiHi / 2, -kPiHi / 2, -kPiLo / 2);
}

RealInterval cos(const RealInterval& x) {
    // max at 2k*pi, min at pi + 2k*pi
    return periodic_range(x, [](double v) { return std::cos(v); }, 0.0, 0.0, kPiLo, kPiHi);
}

RealInterval exp(const RealInterval& x) {
    double lo = x.lo() == 0.0 ? 1.0 : std::max(0.0, down(std::exp(x.lo()), 2));
    double hi = x.hi() == 0.0 ? 1.0 : up(std::exp(x.hi()), 2);
    return {lo, hi};
}

RealInterval log(const RealInterval& x) {
    if (x.lo() <= 0.0) throw DomainError("log of an interval reaching nonpositive values");
    double lo = x.lo() == 1.0 ? 0.0 : down(std::log(x.lo()), 2);
    double hi = x.hi() == 1.0 ? 0.0 : up(std::log(x.hi()), 2);
    return {lo, hi};
}

RealInterval sqrt(const RealInterval& x) {
    if (x.lo() < 0.0) throw DomainError("sqrt of an interval reaching negative values");
    auto root_down = [](double v) {
        double r = std::sqrt(v);
        return r * r == v ? r : std::max(0.0, down(r));
    };
    auto root_up = [](double v) {
        double r = std::sqrt(v);
        return r * r == v ? r : up(r);
    };
    return {root_down(x.lo()), root_up(x.hi())};
}

RealInterval abs(const RealInterval& x) {
    if (x.lo() >= 0) return x;
    if (x.hi() <= 0) return -x;
    return {0.0, std::max(-x.lo(), x.hi())};
}

RealInterval pow(const RealInterval& x, int n) {
    if (n == 0) return RealInterval(1.0);
    if (n < 0) return RealInterval(1.0) / pow(x, -n);
    if (n % 2 == 0 && x.contains_zero()) {
        RealInterval m(0.0, x.mag());
        RealInterval r(1.0);
        for (int i = 0; i < n; ++i) r = r * m;
        return {0.0, r.hi()};
    }
    RealInterval r(1.0);
    for (int i = 0; i < n; ++i) r = r * x;
    if (n % 2 == 0 && r.lo() < 0) return {0.0, r.hi()};
    return r;
}

} // namespace ineqcert
