#include "ineqcert/expr.hpp"

#include "ineqcert/piecewise.hpp"
#include "ineqcert/polynomial.hpp"

#include <cctype>
#include <limits>
#include <optional>

namespace ineqcert {

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

bool is_unary_fn(Op op) {
    return op == Op::Sin || op == Op::Cos || op == Op::Exp || op == Op::Log || op == Op::Abs || op == Op::Sqrt;
}

const char* fn_name(Op op) {
    switch (op) {
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Abs: return "abs";
    case Op::Sqrt: return "sqrt";
    default: return "";
    }
}

std::optional<Op> fn_from_name(std::string_view name) {
    for (Op op : {Op::Sin, Op::Cos, Op::Exp, Op::Log, Op::Abs, Op::Sqrt})
        if (name == fn_name(op)) return op;
    return std::nullopt;
}

// ---- parser ---------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg, ParseError::Kind kind = ParseError::Kind::Syntax) const {
        throw ParseError(kind, pos_, msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            if (accept('+')) lhs = Expr::raw(Op::Add, lhs, term());
            else if (accept('-')) lhs = Expr::raw(Op::Sub, lhs, term());
            else return lhs;
        }
    }

    Expr term() {
        Expr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = Expr::raw(Op::Mul, lhs, unary());
            else if (accept('/')) {
                std::size_t at = pos_;
                Expr rhs = unary();
                if (rhs.is_constant(0)) throw ParseError(ParseError::Kind::Syntax, at, "division by literal zero");
                lhs = Expr::raw(Op::Div, lhs, rhs);
            } else return lhs;
        }
    }

    Expr unary() {
        if (accept('-')) {
            // a bare literal folds into a negative constant
            if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
                std::size_t save = pos_;
                Rational v = number();
                if (peek() != '^') return Expr::constant(-v);
                pos_ = save;
            }
            return Expr::raw(Op::Neg, unary());
        }
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (!accept('^')) return base;
        skip_ws();
        std::size_t at = pos_;
        bool negative = false;
        bool paren = accept('(');
        if (accept('-')) negative = true;
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_ || (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == '/' || std::isalpha(static_cast<unsigned char>(s_[pos_])))))
            throw ParseError(ParseError::Kind::NonIntegerExponent, at, "exponent must be an integer literal");
        std::string digits(s_.substr(start, pos_ - start));
        if (digits.size() > 6) throw ParseError(ParseError::Kind::NonIntegerExponent, at, "exponent too large");
        if (paren && !accept(')')) fail("expected ')'");
        int n = std::stoi(digits);
        return Expr::raw(Op::Pow, base, Expr(), negative ? -n : n);
    }

    Rational number() {
        skip_ws();
        std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        };
        digits();
        bool decimal = false;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            decimal = true;
            ++pos_;
            digits();
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                decimal = true;
                digits();
            } else pos_ = save;
        }
        // "p/q" without spaces is one literal, unless a power follows (then it is p / q^k)
        if (!decimal && pos_ + 1 < s_.size() && s_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            std::size_t save = pos_++;
            digits();
            bool followed_by_dot = pos_ < s_.size() && s_[pos_] == '.';
            std::size_t after = pos_;
            while (after < s_.size() && std::isspace(static_cast<unsigned char>(s_[after]))) ++after;
            if (followed_by_dot || (after < s_.size() && s_[after] == '^')) pos_ = save;
        }
        std::string_view text = s_.substr(start, pos_ - start);
        if (text.empty() || text == ".") throw ParseError(ParseError::Kind::Syntax, start, "expected a number");
        try {
            return parse_rational(text);
        } catch (const PreconditionError&) {
            throw ParseError(ParseError::Kind::Syntax, start, "invalid number");
        }
    }

    Expr atom() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::constant(number());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string_view name = s_.substr(start, pos_ - start);
            if (name == "x") return Expr::variable();
            auto op = fn_from_name(name);
            if (!op) throw ParseError(ParseError::Kind::UnknownIdentifier, start, "unknown identifier '" + std::string(name) + "'");
            if (!accept('(')) fail("expected '(' after " + std::string(name));
            Expr arg = expr();
            if (!accept(')')) fail("expected ')'");
            return Expr::raw(*op, arg);
        }
        if (accept('(')) {
            Expr inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (c == '\0') fail("unexpected end of input");
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

// ---- serializer -----------------------------------------------------------

int precedence(const Expr& e) {
    switch (e.op()) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    case Op::Constant: return sgn(e.value()) < 0 ? 0 : 5;
    default: return 5;
    }
}

void write(const Expr& e, int min_prec, std::string& out);

void write_constant(const Rational& v, bool as_base, std::string& out) {
    if (sgn(v) < 0) {
        out += "(-" + to_string(Rational(-v)) + ")";
        return;
    }
    std::string s = to_string(v);
    bool fraction = s.find('/') != std::string::npos;
    if (as_base && fraction) out += "(" + s + ")";
    else out += s;
}

void write(const Expr& e, int min_prec, std::string& out) {
    if (e.op() == Op::Constant) {
        write_constant(e.value(), min_prec >= 4, out);
        return;
    }
    int p = precedence(e);
    bool paren = p < min_prec;
    if (paren) out += '(';
    switch (e.op()) {
    case Op::Variable: out += 'x'; break;
    case Op::Neg:
        out += '-';
        // keep -(3) distinct from the literal -3
        if (e.lhs().is_constant()) {
            out += '(';
            write(e.lhs(), 0, out);
            out += ')';
        } else write(e.lhs(), 3, out);
        break;
    case Op::Add:
    case Op::Sub:
        write(e.lhs(), 1, out);
        out += e.op() == Op::Add ? " + " : " - ";
        write(e.rhs(), 2, out);
        break;
    case Op::Mul:
    case Op::Div:
        write(e.lhs(), 2, out);
        out += e.op() == Op::Mul ? "*" : " / ";
        write(e.rhs(), 3, out);
        break;
    case Op::Pow:
        write(e.lhs(), 5, out);
        out += '^';
        if (e.exponent() < 0) out += "(" + std::to_string(e.exponent()) + ")";
        else out += std::to_string(e.exponent());
        break;
    default:
        out += fn_name(e.op());
        out += '(';
        write(e.lhs(), 0, out);
        out += ')';
        break;
    }
    if (paren) out += ')';
}

// ---- evaluation -----------------------------------------------------------

double eval_node(const Expr& e, double x, bool& overflow) {
    auto check = [&](double v) {
        if (std::isinf(v)) overflow = true;
        return v;
    };
    switch (e.op()) {
    case Op::Constant: return to_double(e.value());
    case Op::Variable: return x;
    case Op::Neg: return -eval_node(e.lhs(), x, overflow);
    case Op::Sin: return std::sin(eval_node(e.lhs(), x, overflow));
    case Op::Cos: return std::cos(eval_node(e.lhs(), x, overflow));
    case Op::Exp: return check(std::exp(eval_node(e.lhs(), x, overflow)));
    case Op::Log: {
        double v = eval_node(e.lhs(), x, overflow);
        if (!(v > 0)) throw DomainError("log of a nonpositive value");
        return std::log(v);
    }
    case Op::Abs: return std::fabs(eval_node(e.lhs(), x, overflow));
    case Op::Sqrt: {
        double v = eval_node(e.lhs(), x, overflow);
        if (v < 0) throw DomainError("sqrt of a negative value");
        return std::sqrt(v);
    }
    case Op::Add: return check(eval_node(e.lhs(), x, overflow) + eval_node(e.rhs(), x, overflow));
    case Op::Sub: return check(eval_node(e.lhs(), x, overflow) - eval_node(e.rhs(), x, overflow));
    case Op::Mul: return check(eval_node(e.lhs(), x, overflow) * eval_node(e.rhs(), x, overflow));
    case Op::Div: {
        double num = eval_node(e.lhs(), x, overflow);
        double den = eval_node(e.rhs(), x, overflow);
        if (den == 0.0) throw DomainError("division by zero");
        return check(num / den);
    }
    case Op::Pow: {
        double base = eval_node(e.lhs(), x, overflow);
        if (e.exponent() < 0 && base == 0.0) throw DomainError("negative power of zero");
        return check(std::pow(base, e.exponent()));
    }
    }
    throw DomainError("unknown expression node");
}

Polynomial to_polynomial(const Expr& e) {
    switch (e.op()) {
    case Op::Constant: return Polynomial::constant(e.value());
    case Op::Variable: return Polynomial::monomial(Rational(1), 1);
    case Op::Neg: return -to_polynomial(e.lhs());
    case Op::Add: return to_polynomial(e.lhs()) + to_polynomial(e.rhs());
    case Op::Sub: return to_polynomial(e.lhs()) - to_polynomial(e.rhs());
    case Op::Mul: return to_polynomial(e.lhs()) * to_polynomial(e.rhs());
    case Op::Pow: {
        if (e.exponent() < 0) throw NotPolynomial("negative power in '" + serialize(e) + "'");
        Polynomial base = to_polynomial(e.lhs());
        Polynomial acc = Polynomial::constant(Rational(1));
        for (int i = 0; i < e.exponent(); ++i) acc = acc * base;
        return acc;
    }
    case Op::Div: throw NotPolynomial("division in '" + serialize(e) + "'");
    default: throw NotPolynomial(std::string(fn_name(e.op())) + " is not polynomial");
    }
}

} // namespace

// ---- construction ---------------------------------------------------------

Expr Expr::constant(const Rational& c) {
    auto n = std::make_shared<Node>();
    n->op = Op::Constant;
    n->value = c;
    return Expr(std::move(n));
}

Expr Expr::variable() {
    static const Expr x = [] {
        auto n = std::make_shared<Node>();
        n->op = Op::Variable;
        return Expr(std::move(n));
    }();
    return x;
}

Expr Expr::raw(Op op, const Expr& lhs, const Expr& rhs, int exponent) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = lhs.node_;
    if (op != Op::Neg && op != Op::Pow && !is_unary_fn(op)) n->rhs = rhs.node_;
    n->exponent = exponent;
    return Expr(std::move(n));
}

Expr Expr::unary(Op op, const Expr& arg) {
    if (op == Op::Neg) {
        if (arg.is_constant()) return constant(-arg.value());
        if (arg.op() == Op::Neg) return arg.lhs();
    }
    return raw(op, arg);
}

Expr Expr::binary(Op op, const Expr& a, const Expr& b) {
    if (op == Op::Div && b.is_constant(0)) throw DomainError("division by literal zero");
    if (a.is_constant() && b.is_constant()) {
        switch (op) {
        case Op::Add: return constant(a.value() + b.value());
        case Op::Sub: return constant(a.value() - b.value());
        case Op::Mul: return constant(a.value() * b.value());
        case Op::Div: return constant(a.value() / b.value());
        default: break;
        }
    }
    switch (op) {
    case Op::Add:
        if (a.is_constant(0)) return b;
        if (b.is_constant(0)) return a;
        break;
    case Op::Sub:
        if (b.is_constant(0)) return a;
        if (a.is_constant(0)) return unary(Op::Neg, b);
        break;
    case Op::Mul:
        if (a.is_constant(0) || b.is_constant(0)) return constant(Rational(0));
        if (a.is_constant(1)) return b;
        if (b.is_constant(1)) return a;
        if (a.is_constant(-1)) return unary(Op::Neg, b);
        if (b.is_constant(-1)) return unary(Op::Neg, a);
        break;
    case Op::Div:
        if (b.is_constant(1)) return a;
        if (a.is_constant(0)) return a;
        break;
    default: break;
    }
    return raw(op, a, b);
}

Expr Expr::power(const Expr& base, int exponent) {
    if (exponent == 0) return constant(Rational(1));
    if (exponent == 1) return base;
    if (base.is_constant()) {
        if (exponent < 0 && sgn(base.value()) == 0) throw DomainError("negative power of zero");
        Rational p = ineqcert::power(base.value(), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
        return constant(exponent < 0 ? Rational(1 / p) : p);
    }
    return raw(Op::Pow, base, Expr(), exponent);
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op()) return false;
    switch (a.op()) {
    case Op::Constant: return a.value() == b.value();
    case Op::Variable: return true;
    case Op::Pow: return a.exponent() == b.exponent() && structurally_equal(a.lhs(), b.lhs());
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: return structurally_equal(a.lhs(), b.lhs()) && structurally_equal(a.rhs(), b.rhs());
    default: return structurally_equal(a.lhs(), b.lhs());
    }
}

Expr parse(std::string_view text) { return Parser(text).run(); }

std::string serialize(const Expr& e) {
    std::string out;
    write(e, 0, out);
    return out;
}

Expr differentiate(const Expr& e) {
    const Expr zero = Expr::constant(Rational(0));
    const Expr one = Expr::constant(Rational(1));
    switch (e.op()) {
    case Op::Constant: return zero;
    case Op::Variable: return one;
    case Op::Neg: return -differentiate(e.lhs());
    case Op::Add: return differentiate(e.lhs()) + differentiate(e.rhs());
    case Op::Sub: return differentiate(e.lhs()) - differentiate(e.rhs());
    case Op::Mul: {
        Expr u = e.lhs();
        Expr v = e.rhs();
        return differentiate(u) * v + u * differentiate(v);
    }
    case Op::Div: {
        Expr u = e.lhs();
        Expr v = e.rhs();
        return (differentiate(u) * v - u * differentiate(v)) / Expr::power(v, 2);
    }
    case Op::Pow: {
        Expr u = e.lhs();
        int n = e.exponent();
        return Expr::constant(Rational(n)) * Expr::power(u, n - 1) * differentiate(u);
    }
    case Op::Sin: return Expr::unary(Op::Cos, e.lhs()) * differentiate(e.lhs());
    case Op::Cos: return -Expr::unary(Op::Sin, e.lhs()) * differentiate(e.lhs());
    case Op::Exp: return e * differentiate(e.lhs());
    case Op::Log: return differentiate(e.lhs()) / e.lhs();
    case Op::Sqrt: return differentiate(e.lhs()) / (Expr::constant(Rational(2)) * e);
    case Op::Abs: return differentiate(e.lhs()) * (e.lhs() / e); // sign(u) as u/|u|, undefined at the kink
    }
    throw DomainError("unknown expression node");
}

Expr differentiate(const Expr& e, unsigned times) {
    Expr out = e;
    for (unsigned i = 0; i < times; ++i) out = differentiate(out);
    return out;
}

Evaluation evaluate(const Expr& e, double x) {
    bool overflow = false;
    double v = eval_node(e, x, overflow);
    return {v, overflow || std::isinf(v)};
}

double eval(const Expr& e, double x) { return evaluate(e, x).value; }

RealInterval eval_interval(const Expr& e, const RealInterval& x) {
    switch (e.op()) {
    case Op::Constant: return RealInterval::enclose(e.value());
    case Op::Variable: return x;
    case Op::Neg: return -eval_interval(e.lhs(), x);
    case Op::Sin: return sin(eval_interval(e.lhs(), x));
    case Op::Cos: return cos(eval_interval(e.lhs(), x));
    case Op::Exp: return exp(eval_interval(e.lhs(), x));
    case Op::Log: return log(eval_interval(e.lhs(), x));
    case Op::Abs: return abs(eval_interval(e.lhs(), x));
    case Op::Sqrt: return sqrt(eval_interval(e.lhs(), x));
    case Op::Add: return eval_interval(e.lhs(), x) + eval_interval(e.rhs(), x);
    case Op::Sub: return eval_interval(e.lhs(), x) - eval_interval(e.rhs(), x);
    case Op::Mul: {
        // same subtree on both sides: use the square, which is tighter
        if (structurally_equal(e.lhs(), e.rhs())) return pow(eval_interval(e.lhs(), x), 2);
        return eval_interval(e.lhs(), x) * eval_interval(e.rhs(), x);
    }
    case Op::Div: return eval_interval(e.lhs(), x) / eval_interval(e.rhs(), x);
    case Op::Pow: return pow(eval_interval(e.lhs(), x), e.exponent());
    }
    throw DomainError("unknown expression node");
}

PiecewisePoly lower_to_poly(const Expr& e, const Interval& I) { return PiecewisePoly(I, to_polynomial(e)); }

} // namespace ineqcert
