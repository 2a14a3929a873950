#include "ineqcert/piecewise.hpp"

#include "ineqcert/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ineqcert {

Interval::Interval(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    if (!(a_ < b_)) throw PreconditionError("interval requires a < b, got [" + to_string(a_) + ", " + to_string(b_) + "]");
}

PiecewisePoly::PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Polynomial> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size())
        throw PreconditionError("piecewise polynomial needs K pieces and K+1 breakpoints");
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
        if (!(breaks_[i] < breaks_[i + 1])) throw PreconditionError("breakpoints must be strictly increasing");
}

PiecewisePoly::PiecewisePoly(const Interval& span, Polynomial p)
    : breaks_{span.a(), span.b()}, pieces_{std::move(p)} {}

int PiecewisePoly::degree() const {
    int d = 0;
    for (const auto& p : pieces_) d = std::max(d, p.degree());
    return d;
}

std::size_t PiecewisePoly::locate(const Rational& x) const {
    if (x < breaks_.front() || x > breaks_.back())
        throw OutOfInterval("point " + to_string(x) + " outside [" + to_string(breaks_.front()) + ", " +
                            to_string(breaks_.back()) + "]");
    // first breakpoint >= x, excluding t0
    auto it = std::lower_bound(breaks_.begin() + 1, breaks_.end(), x);
    return static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

Rational PiecewisePoly::operator()(const Rational& x) const { return pieces_[locate(x)](x); }

double PiecewisePoly::operator()(double x) const {
    Rational q = from_double(x);
    if (q < breaks_.front()) q = breaks_.front();
    if (q > breaks_.back()) q = breaks_.back();
    return pieces_[locate(q)](x);
}

Rational PiecewisePoly::left_limit(const Rational& x) const {
    if (!(x > breaks_.front())) throw OutOfInterval("left limit needs x > a");
    return pieces_[locate(x)](x);
}

Rational PiecewisePoly::right_limit(const Rational& x) const {
    if (!(x < breaks_.back())) throw OutOfInterval("right limit needs x < b");
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    return pieces_[static_cast<std::size_t>(it - breaks_.begin()) - 1](x);
}

Rational PiecewisePoly::derivative_at(unsigned k, const Rational& x) const {
    return pieces_[locate(x)].derivative(k)(x);
}

bool PiecewisePoly::is_continuous(unsigned order) const {
    for (std::size_t i = 1; i + 1 < breaks_.size(); ++i) {
        Polynomial l = pieces_[i - 1];
        Polynomial r = pieces_[i];
        for (unsigned k = 0; k <= order; ++k) {
            if (l(breaks_[i]) != r(breaks_[i])) return false;
            l = l.derivative();
            r = r.derivative();
        }
    }
    return true;
}

PiecewisePoly PiecewisePoly::derivative(unsigned k) const {
    std::vector<Polynomial> d;
    d.reserve(pieces_.size());
    for (const auto& p : pieces_) d.push_back(p.derivative(k));
    return {breaks_, std::move(d)};
}

PiecewisePoly PiecewisePoly::restrict(const Interval& I) const {
    if (!span().contains(I)) throw OutOfInterval("restriction interval outside the span");
    std::vector<Rational> br{I.a()};
    std::vector<Polynomial> ps;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (breaks_[i + 1] <= I.a() || breaks_[i] >= I.b()) continue;
        ps.push_back(pieces_[i]);
        br.push_back(std::min(breaks_[i + 1], I.b()));
    }
    return {std::move(br), std::move(ps)};
}

PiecewisePoly PiecewisePoly::refine(const std::vector<Rational>& points) const {
    std::vector<Rational> br = breaks_;
    for (const auto& p : points)
        if (p > breaks_.front() && p < breaks_.back()) br.push_back(p);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    std::vector<Polynomial> ps;
    ps.reserve(br.size() - 1);
    std::size_t j = 0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        while (breaks_[j + 1] <= br[i]) ++j;
        ps.push_back(pieces_[j]);
    }
    return {std::move(br), std::move(ps)};
}

PiecewisePoly PiecewisePoly::simplified() const {
    std::vector<Rational> br{breaks_.front()};
    std::vector<Polynomial> ps{pieces_.front()};
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
        if (pieces_[i] == ps.back()) {
            continue;
        }
        br.push_back(breaks_[i]);
        ps.push_back(pieces_[i]);
    }
    br.push_back(breaks_.back());
    return {std::move(br), std::move(ps)};
}

std::pair<PiecewisePoly, PiecewisePoly> common_refinement(const PiecewisePoly& f, const PiecewisePoly& g) {
    if (!(f.span() == g.span())) throw PreconditionError("functions are defined on different intervals");
    return {f.refine(g.breakpoints()), g.refine(f.breakpoints())};
}

namespace {

template <typename Combine>
PiecewisePoly combine(const PiecewisePoly& f, const PiecewisePoly& g, Combine op) {
    auto [rf, rg] = common_refinement(f, g);
    std::vector<Polynomial> ps;
    ps.reserve(rf.piece_count());
    for (std::size_t i = 0; i < rf.piece_count(); ++i) ps.push_back(op(rf.piece(i), rg.piece(i)));
    return {rf.breakpoints(), std::move(ps)};
}

} // namespace

PiecewisePoly operator+(const PiecewisePoly& f, const PiecewisePoly& g) {
    return combine(f, g, [](const Polynomial& p, const Polynomial& q) { return p + q; });
}

PiecewisePoly operator-(const PiecewisePoly& f, const PiecewisePoly& g) {
    return combine(f, g, [](const Polynomial& p, const Polynomial& q) { return p - q; });
}

PiecewisePoly operator*(const PiecewisePoly& f, const PiecewisePoly& g) {
    return combine(f, g, [](const Polynomial& p, const Polynomial& q) { return p * q; });
}

PiecewisePoly operator*(const Rational& s, const PiecewisePoly& f) {
    std::vector<Polynomial> ps;
    for (const auto& p : f.pieces_) ps.push_back(s * p);
    return {f.breaks_, std::move(ps)};
}

PiecewisePoly operator+(const PiecewisePoly& f, const Polynomial& p) {
    std::vector<Polynomial> ps;
    for (const auto& q : f.pieces_) ps.push_back(q + p);
    return {f.breaks_, std::move(ps)};
}

PiecewisePoly operator-(const PiecewisePoly& f, const Polynomial& p) {
    std::vector<Polynomial> ps;
    for (const auto& q : f.pieces_) ps.push_back(q - p);
    return {f.breaks_, std::move(ps)};
}

} // namespace ineqcert
