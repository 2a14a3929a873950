#pragma once

#include "ineqcert/errors.hpp"
#include "ineqcert/rational.hpp"
#include "ineqcert/real_interval.hpp"

#include <cmath>
#include <memory>
#include <string>
#include <string_view>

namespace ineqcert {

class Interval;
class PiecewisePoly;

enum class Op { Constant, Variable, Neg, Sin, Cos, Exp, Log, Abs, Sqrt, Add, Sub, Mul, Div, Pow };

/// Immutable expression tree in the single variable x. Cheap to copy (shared nodes) and safe
/// to evaluate concurrently.
class Expr {
public:
    struct Node {
        Op op;
        Rational value;  // Constant
        int exponent = 0; // Pow
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };

    Expr() : Expr(constant(Rational(0))) {}

    static Expr constant(const Rational& c);
    static Expr variable();
    /// Smart constructors; they fold literal arithmetic and the identities x+0, x*1, x*0, x^1, x^0.
    static Expr unary(Op op, const Expr& arg);
    static Expr binary(Op op, const Expr& lhs, const Expr& rhs);
    static Expr power(const Expr& base, int exponent);
    /// Builds the node exactly as given, without folding (used by the parser).
    static Expr raw(Op op, const Expr& lhs, const Expr& rhs = Expr(nullptr), int exponent = 0);

    Op op() const { return node_->op; }
    const Rational& value() const { return node_->value; }
    int exponent() const { return node_->exponent; }
    Expr lhs() const { return Expr(node_->lhs); }
    Expr rhs() const { return Expr(node_->rhs); }
    bool is_constant() const { return node_->op == Op::Constant; }
    bool is_constant(long v) const { return is_constant() && node_->value == v; }

    friend bool structurally_equal(const Expr& a, const Expr& b);

    friend Expr operator+(const Expr& a, const Expr& b) { return binary(Op::Add, a, b); }
    friend Expr operator-(const Expr& a, const Expr& b) { return binary(Op::Sub, a, b); }
    friend Expr operator*(const Expr& a, const Expr& b) { return binary(Op::Mul, a, b); }
    friend Expr operator/(const Expr& a, const Expr& b) { return binary(Op::Div, a, b); }
    friend Expr operator-(const Expr& a) { return unary(Op::Neg, a); }

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Parses the expression grammar: + - (left-assoc) < * / (left-assoc) < unary minus < ^INT,
/// with atoms x, decimal or p/q literals, sin cos exp log abs sqrt calls, and parentheses.
Expr parse(std::string_view text);

/// Text that parses back to a structurally identical tree.
std::string serialize(const Expr& e);

Expr differentiate(const Expr& e);
Expr differentiate(const Expr& e, unsigned times);

/// IEEE double evaluation. Throws DomainError for log/sqrt/division outside the domain;
/// overflow yields an infinite value (see Evaluation::overflow).
double eval(const Expr& e, double x);

struct Evaluation {
    double value;
    bool overflow;
};
Evaluation evaluate(const Expr& e, double x);

/// Outward-rounded interval evaluation; throws DomainError when the enclosure reaches a
/// singularity (log or sqrt out of domain, divisor containing zero).
RealInterval eval_interval(const Expr& e, const RealInterval& x);

/// Generic evaluation for high-precision number types providing sin/cos/exp/log/sqrt/abs via ADL.
template <typename T, typename FromRational>
T eval_as(const Expr& e, const T& x, const FromRational& from_rational) {
    using std::abs;
    using std::cos;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sqrt;
    switch (e.op()) {
    case Op::Constant: return from_rational(e.value());
    case Op::Variable: return x;
    case Op::Neg: return T(-eval_as(e.lhs(), x, from_rational));
    case Op::Sin: return T(sin(eval_as(e.lhs(), x, from_rational)));
    case Op::Cos: return T(cos(eval_as(e.lhs(), x, from_rational)));
    case Op::Exp: return T(exp(eval_as(e.lhs(), x, from_rational)));
    case Op::Log: {
        T v = eval_as(e.lhs(), x, from_rational);
        if (!(v > 0)) throw DomainError("log of a nonpositive value");
        return T(log(v));
    }
    case Op::Abs: return T(abs(eval_as(e.lhs(), x, from_rational)));
    case Op::Sqrt: {
        T v = eval_as(e.lhs(), x, from_rational);
        if (v < 0) throw DomainError("sqrt of a negative value");
        return T(sqrt(v));
    }
    case Op::Add: return T(eval_as(e.lhs(), x, from_rational) + eval_as(e.rhs(), x, from_rational));
    case Op::Sub: return T(eval_as(e.lhs(), x, from_rational) - eval_as(e.rhs(), x, from_rational));
    case Op::Mul: return T(eval_as(e.lhs(), x, from_rational) * eval_as(e.rhs(), x, from_rational));
    case Op::Div: {
        T d = eval_as(e.rhs(), x, from_rational);
        if (d == 0) throw DomainError("division by zero");
        return T(eval_as(e.lhs(), x, from_rational) / d);
    }
    case Op::Pow: {
        T base = eval_as(e.lhs(), x, from_rational);
        int n = e.exponent();
        if (n < 0 && base == 0) throw DomainError("negative power of zero");
        T acc(1);
        for (int i = 0; i < (n < 0 ? -n : n); ++i) acc *= base;
        return n < 0 ? T(T(1) / acc) : acc;
    }
    }
    throw DomainError("unknown expression node");
}

/// Exact single-piece polynomial equal to e on I; throws NotPolynomial for transcendental
/// functions, division, or negative powers.
PiecewisePoly lower_to_poly(const Expr& e, const Interval& I);

} // namespace ineqcert
