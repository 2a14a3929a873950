#include "ineqcert/polynomial.hpp"

#include "ineqcert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ineqcert {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) coeffs_.emplace_back(0);
    canonicalize();
}

void Polynomial::canonicalize() {
    while (coeffs_.size() > 1 && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(const Rational& c, unsigned degree) {
    std::vector<Rational> coeffs(degree + 1, Rational(0));
    coeffs[degree] = c;
    return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::shifted_power(const Rational& c, unsigned n) {
    Polynomial base({Rational(-c), Rational(1)});
    Polynomial result = constant(1);
    for (unsigned i = 0; i < n; ++i) result = result * base;
    return result;
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
        acc *= x;
        acc += coeffs_[i];
    }
    return acc;
}

double Polynomial::operator()(double x) const {
    double acc = coeffs_.back().get_d();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * x + coeffs_[i].get_d();
    return acc;
}

RationalBounds Polynomial::operator()(const RationalBounds& x) const {
    if (x.is_point()) return RationalBounds::point((*this)(x.lo));
    RationalBounds acc = RationalBounds::point(coeffs_.back());
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
        acc = acc * x;
        acc.lo += coeffs_[i];
        acc.hi += coeffs_[i];
    }
    return acc;
}

Polynomial Polynomial::derivative(unsigned k) const {
    if (k == 0) return *this;
    if (static_cast<int>(k) > degree()) return Polynomial();
    std::vector<Rational> out(coeffs_.size() - k);
    for (std::size_t i = k; i < coeffs_.size(); ++i) {
        Rational falling(1);
        for (unsigned j = 0; j < k; ++j) falling *= static_cast<long>(i - j);
        out[i - k] = coeffs_[i] * falling;
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::antiderivative() const {
    std::vector<Rational> out(coeffs_.size() + 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i + 1] = coeffs_[i] / static_cast<long>(i + 1);
    return Polynomial(std::move(out));
}

Rational Polynomial::integrate(const Rational& lo, const Rational& hi) const {
    Polynomial anti = antiderivative();
    return anti(hi) - anti(lo);
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    canonicalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    canonicalize();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    canonicalize();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (sgn(a.coeffs_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> rem = coeffs_;
    const int dd = divisor.degree();
    if (degree() < dd) return {Polynomial(), *this};
    std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd + 1), Rational(0));
    const Rational& lead = divisor.leading();
    for (int i = degree(); i >= dd; --i) {
        Rational factor = rem[static_cast<std::size_t>(i)] / lead;
        quot[static_cast<std::size_t>(i - dd)] = factor;
        if (sgn(factor) == 0) continue;
        for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i - dd + j)] -= factor * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(std::max(dd, 1)));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    Polynomial r = *this;
    Rational inv = Rational(1) / leading();
    return r *= inv;
}

std::string Polynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[static_cast<std::size_t>(k)];
        if (sgn(c) == 0) continue;
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) out << '-';
        } else {
            out << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            out << ineqcert::to_string(mag);
            continue;
        }
        if (mag != 1) out << ineqcert::to_string(mag) << '*';
        out << 'x';
        if (k > 1) out << '^' << k;
    }
    return out.str();
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a.monic();
    Polynomial y = b.monic();
    while (!y.is_zero()) {
        Polynomial r = x.divmod(y).second;
        x = y;
        y = r.monic();
    }
    return x.monic();
}

Polynomial square_free_part(const Polynomial& p) {
    if (p.degree() <= 1) return p;
    Polynomial g = gcd(p, p.derivative());
    if (g.degree() == 0) return p;
    return p.divmod(g).first;
}

namespace {

class SturmChain {
public:
    explicit SturmChain(const Polynomial& q) {
        chain_.push_back(q);
        chain_.push_back(q.derivative());
        while (!chain_.back().is_zero() && chain_.back().degree() > 0) {
            Polynomial r = chain_[chain_.size() - 2].divmod(chain_.back()).second;
            if (r.is_zero()) break;
            // Positive rescaling keeps signs and limits coefficient growth.
            Rational lead = abs(r.leading());
            chain_.push_back(-(r * (Rational(1) / lead)));
        }
    }

    int variations(const Rational& x) const {
        int count = 0;
        int previous = 0;
        for (const auto& p : chain_) {
            int s = sgn(p(x));
            if (s == 0) continue;
            if (previous != 0 && s != previous) ++count;
            previous = s;
        }
        return count;
    }

    /// Distinct roots in (l, r].
    int count(const Rational& l, const Rational& r) const { return variations(l) - variations(r); }

private:
    std::vector<Polynomial> chain_;
};

struct Isolator {
    const Polynomial& q;
    const SturmChain& chain;
    std::vector<double> qd;

    int sign_at(const Rational& x) const { return sgn(q(x)); }

    double eval_double(double x) const {
        double acc = qd.back();
        for (std::size_t i = qd.size() - 1; i-- > 0;) acc = acc * x + qd[i];
        return acc;
    }

    // Approximate root in [xl, xr] by bisection in double precision given the exact sign at xl.
    double approximate(double xl, double xr, int sl) const {
        for (int it = 0; it < 90 && xl < xr; ++it) {
            double m = xl + (xr - xl) / 2;
            if (m <= xl || m >= xr) break;
            double v = eval_double(m);
            int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
            if (s == 0) return m;
            if (s == sl) xl = m;
            else xr = m;
        }
        return xl + (xr - xl) / 2;
    }

    RealRoot refine(Rational l, Rational r, const Rational& target) const {
        const int sl = sign_at(l);
        int newton_attempts = 0;
        while (r - l > target) {
            if (newton_attempts < 3) {
                ++newton_attempts;
                double x = approximate(to_double(l), to_double(r), sl);
                if (std::isfinite(x)) {
                    Rational xc = from_double(x);
                    Rational delta = target / 4;
                    Rational a = xc - delta;
                    Rational b = xc + delta;
                    if (a > l && b < r) {
                        int sa = sign_at(a);
                        int sb = sign_at(b);
                        if (sa == 0) return {a, a};
                        if (sb == 0) return {b, b};
                        if (sa == sl && sb == -sl) {
                            l = a;
                            r = b;
                            continue;
                        }
                    }
                }
            }
            for (int step = 0; step < 8 && r - l > target; ++step) {
                Rational m = (l + r) / 2;
                int sm = sign_at(m);
                if (sm == 0) return {m, m};
                if (sm == sl) l = m;
                else r = m;
            }
        }
        Rational s = simplest_between(l, r);
        if (s != l && s != r && sign_at(s) == 0) return {s, s};
        return {l, r};
    }

    // A point p in (x, limit) with q(p) != 0 and no root in (x, p].
    Rational step_right(const Rational& x, const Rational& limit) const {
        Rational eps = (limit - x) / 2;
        for (;;) {
            Rational p = x + eps;
            if (sign_at(p) != 0 && chain.count(x, p) == 0) return p;
            eps /= 2;
        }
    }

    Rational step_left(const Rational& x, const Rational& limit) const {
        Rational eps = (x - limit) / 2;
        for (;;) {
            Rational p = x - eps;
            if (sign_at(p) != 0 && chain.count(p, x) == (sign_at(x) == 0 ? 1 : 0)) return p;
            eps /= 2;
        }
    }
};

} // namespace

std::vector<RealRoot> real_roots(const Polynomial& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw PreconditionError("real_roots: zero polynomial");
    if (lo > hi) throw PreconditionError("real_roots: empty interval");
    std::vector<RealRoot> roots;
    if (p.is_constant()) return roots;
    if (lo == hi) {
        if (sgn(p(lo)) == 0) roots.push_back({lo, lo});
        return roots;
    }

    const Polynomial q = square_free_part(p);
    const SturmChain chain(q);
    Isolator iso{q, chain, {}};
    for (const auto& c : q.coefficients()) iso.qd.push_back(c.get_d());

    const Rational target = (hi - lo) / Rational(Integer(1) << 50);

    Rational left = lo;
    Rational right = hi;
    if (iso.sign_at(lo) == 0) {
        roots.push_back({lo, lo});
        left = iso.step_right(lo, hi);
    }
    bool root_at_hi = iso.sign_at(hi) == 0;
    if (root_at_hi) {
        if (right <= left) {
            roots.push_back({hi, hi});
            return roots;
        }
        right = iso.step_left(hi, left);
    }

    struct Pending {
        Rational l, r;
    };
    std::vector<Pending> stack;
    if (left < right) stack.push_back({left, right});
    while (!stack.empty()) {
        Pending cur = std::move(stack.back());
        stack.pop_back();
        int n = chain.count(cur.l, cur.r);
        if (n == 0) continue;
        if (n == 1) {
            roots.push_back(iso.refine(cur.l, cur.r, target));
            continue;
        }
        Rational m = (cur.l + cur.r) / 2;
        if (iso.sign_at(m) == 0) {
            roots.push_back({m, m});
            Rational ml = iso.step_left(m, cur.l);
            Rational mr = iso.step_right(m, cur.r);
            stack.push_back({cur.l, ml});
            stack.push_back({mr, cur.r});
        } else {
            stack.push_back({cur.l, m});
            stack.push_back({m, cur.r});
        }
    }
    if (root_at_hi) roots.push_back({hi, hi});
    std::sort(roots.begin(), roots.end(), [](const RealRoot& a, const RealRoot& b) { return a.lo < b.lo; });
    return roots;
}

RationalBounds polynomial_range(const Polynomial& p, const Rational& lo, const Rational& hi, bool* tight) {
    Rational vlo = p(lo);
    Rational vhi = p(hi);
    RationalBounds out{vlo < vhi ? vlo : vhi, vlo < vhi ? vhi : vlo};
    bool lo_attained = true;
    bool hi_attained = true;
    if (p.degree() > 1 && lo != hi) {
        for (const auto& root : real_roots(p.derivative(), lo, hi)) {
            RationalBounds v = root.exact() ? RationalBounds::point(p(root.lo)) : p(RationalBounds{root.lo, root.hi});
            if (v.lo < out.lo) {
                out.lo = v.lo;
                lo_attained = root.exact();
            }
            if (v.hi > out.hi) {
                out.hi = v.hi;
                hi_attained = root.exact();
            }
        }
    }
    if (tight) *tight = lo_attained && hi_attained;
    return out;
}

RationalBounds integrate_abs(const Polynomial& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero() || lo == hi) return RationalBounds::point(Rational(0));
    const Polynomial anti = p.antiderivative();
    std::vector<RationalBounds> splits;
    splits.push_back(RationalBounds::point(lo));
    for (const auto& root : real_roots(p, lo, hi)) splits.push_back({root.lo, root.hi});
    splits.push_back(RationalBounds::point(hi));

    RationalBounds total = RationalBounds::point(Rational(0));
    for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
        const auto& a = splits[i];
        const auto& b = splits[i + 1];
        if (a.is_point() && b.is_point() && a.lo == b.lo) continue;
        Rational sample = (a.hi + b.lo) / 2;
        int s = sgn(p(sample));
        if (s == 0) continue; // only when both ends are the same exact root
        RationalBounds delta = anti(b) - anti(a);
        total = total + (s > 0 ? delta : RationalBounds{-delta.hi, -delta.lo});
    }
    if (sgn(total.lo) < 0) total.lo = 0;
    return total;
}

} // namespace ineqcert
