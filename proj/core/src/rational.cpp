#include "ineqcert/rational.hpp"

#include "ineqcert/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <limits>

namespace ineqcert {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Rational pow10(long e) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

} // namespace

Rational parse_rational(std::string_view text) {
    auto fail = [&] { return PreconditionError("invalid number '" + std::string(text) + "'"); };
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw fail();

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw fail();
        Integer d(std::string(den), 10);
        if (d == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
        value = Rational(Integer(std::string(num), 10), d);
        value.canonicalize();
    } else {
        std::string_view mantissa = s;
        long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = s.substr(0, e);
            auto exp_text = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 6) throw fail();
            exponent = std::stol(std::string(exp_text));
            if (exp_negative) exponent = -exponent;
        }
        std::string digits;
        long fraction_digits = 0;
        if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
            auto int_part = mantissa.substr(0, dot);
            auto frac_part = mantissa.substr(dot + 1);
            if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
                (int_part.empty() && frac_part.empty()))
                throw fail();
            digits = std::string(int_part) + std::string(frac_part);
            fraction_digits = static_cast<long>(frac_part.size());
        } else {
            if (!all_digits(mantissa)) throw fail();
            digits = std::string(mantissa);
        }
        value = Rational(Integer(digits, 10)) * pow10(exponent - fraction_digits);
        value.canonicalize();
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buffer{};
    auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), end);
}

Rational from_double(double value) {
    if (!std::isfinite(value)) throw DomainError("cannot convert a non-finite double to a rational");
    Rational q(value);
    return q;
}

double round_down(const Rational& q) {
    double d = q.get_d(); // truncates toward zero
    if (!std::isfinite(d)) return d;
    Rational back(d);
    if (back == q) return d;
    return back < q ? d : std::nextafter(d, -std::numeric_limits<double>::infinity());
}

double round_up(const Rational& q) {
    double d = q.get_d();
    if (!std::isfinite(d)) return d;
    Rational back(d);
    if (back == q) return d;
    return back > q ? d : std::nextafter(d, std::numeric_limits<double>::infinity());
}

double to_double(const Rational& q) {
    double lo = round_down(q);
    double hi = round_up(q);
    if (lo == hi || !std::isfinite(lo) || !std::isfinite(hi)) return lo == hi ? lo : q.get_d();
    Rational dl = q - Rational(lo);
    Rational dh = Rational(hi) - q;
    return dl <= dh ? lo : hi;
}

Rational factorial(unsigned n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational power(const Rational& base, unsigned exponent) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

int sign(const Rational& q) { return sgn(q); }

namespace {

// Smallest-denominator rational in [lo, hi] with 0 < lo <= hi, by continued fractions.
Rational simplest_positive(const Rational& lo, const Rational& hi) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (Rational(fl) == lo) return Rational(fl);
    if (Rational(fl + 1) <= hi) return Rational(fl + 1);
    Rational inner = simplest_positive(Rational(1) / (hi - fl), Rational(1) / (lo - fl));
    Rational r = Rational(fl) + Rational(1) / inner;
    return r;
}

} // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (lo > hi) return simplest_between(hi, lo);
    if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
    if (sgn(hi) < 0) return Rational(-simplest_positive(-hi, -lo));
    return simplest_positive(lo, hi);
}

RationalBounds operator+(const RationalBounds& x, const RationalBounds& y) { return {x.lo + y.lo, x.hi + y.hi}; }

RationalBounds operator-(const RationalBounds& x, const RationalBounds& y) { return {x.lo - y.hi, x.hi - y.lo}; }

RationalBounds operator*(const RationalBounds& x, const RationalBounds& y) {
    if (x.is_point() && y.is_point()) {
        Rational p = x.lo * y.lo;
        return {p, p};
    }
    std::array<Rational, 4> p{x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    auto [mn, mx] = std::minmax_element(p.begin(), p.end());
    return {*mn, *mx};
}

RationalBounds operator*(const Rational& s, const RationalBounds& x) {
    if (sgn(s) >= 0) return {s * x.lo, s * x.hi};
    return {s * x.hi, s * x.lo};
}

} // namespace ineqcert
