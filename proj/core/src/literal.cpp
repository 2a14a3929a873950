#include "ineqcert/literal.hpp"

#include "ineqcert/errors.hpp"
#include "ineqcert/expr.hpp"

#include <cctype>

namespace ineqcert {

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(ParseError::Kind::Syntax, pos_, msg); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ == s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(std::string_view token) {
        skip_ws();
        if (s_.substr(pos_, token.size()) != token) return false;
        pos_ += token.size();
        return true;
    }
    void expect(std::string_view token) {
        if (!accept(token)) fail("expected '" + std::string(token) + "'");
    }
    /// Text up to (not including) the first of `stops` at parenthesis depth 0.
    std::string_view until(std::string_view stops) {
        skip_ws();
        std::size_t start = pos_;
        int depth = 0;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (depth == 0 && stops.find(c) != std::string_view::npos) break;
            if (c == '(' || c == '[') ++depth;
            if (c == ')' || c == ']') --depth;
            ++pos_;
        }
        return s_.substr(start, pos_ - start);
    }
    Rational number(std::string_view stops) {
        std::size_t start = (skip_ws(), pos_);
        std::string_view text = until(stops);
        try {
            return parse_rational(text);
        } catch (const PreconditionError&) {
            throw ParseError(ParseError::Kind::Syntax, start, "invalid number '" + std::string(text) + "'");
        }
    }
    std::size_t pos() const { return pos_; }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

Polynomial polynomial_from(std::string_view text, std::size_t offset, const Interval& I) {
    try {
        return lower_to_poly(parse(text), I).piece(0);
    } catch (const ParseError& e) {
        throw ParseError(e.kind(), offset + e.offset(), "invalid piece polynomial");
    }
}

PiecewisePoly read_piecewise(Cursor& c) {
    c.expect("pw[");
    std::vector<Rational> breaks;
    std::vector<Polynomial> pieces;
    for (;;) {
        c.expect("(");
        Rational t0 = c.number(",");
        c.expect(",");
        Rational t1 = c.number(")");
        c.expect(")");
        c.expect(":");
        if (breaks.empty()) breaks.push_back(t0);
        else if (breaks.back() != t0) c.fail("pieces must be contiguous");
        if (!(t0 < t1)) c.fail("piece interval must have t0 < t1");
        std::size_t at = (c.skip_ws(), c.pos());
        std::string_view body = c.until(";]");
        pieces.push_back(polynomial_from(body, at, Interval(t0, t1)));
        breaks.push_back(t1);
        if (c.accept(";")) continue;
        c.expect("]");
        break;
    }
    return {std::move(breaks), std::move(pieces)};
}

} // namespace

PiecewisePoly parse_piecewise(std::string_view text) {
    Cursor c(text);
    PiecewisePoly f = read_piecewise(c);
    if (!c.at_end()) c.fail("trailing characters after piecewise literal");
    return f;
}

std::string serialize(const PiecewisePoly& f) {
    std::string out = "pw[";
    for (std::size_t i = 0; i < f.piece_count(); ++i) {
        if (i) out += "; ";
        out += "(" + to_string(f.breakpoints()[i]) + "," + to_string(f.breakpoints()[i + 1]) + "): ";
        out += f.piece(i).to_string();
    }
    return out + "]";
}

BVFunction parse_bv(std::string_view text) {
    Cursor c(text);
    c.expect("bv[");
    c.expect("pieces:");
    PiecewisePoly base = read_piecewise(c);
    std::vector<JumpRecord> jumps;
    if (c.accept(";")) {
        c.expect("jumps:");
        while (c.peek() == '(') {
            c.expect("(");
            JumpRecord j;
            j.t = c.number(",");
            c.expect(",");
            j.left = c.number(",");
            c.expect(",");
            j.point = c.number(",");
            c.expect(",");
            j.right = c.number(")");
            c.expect(")");
            jumps.push_back(j);
            if (!c.accept(",")) break;
        }
    }
    c.expect("]");
    if (!c.at_end()) c.fail("trailing characters after bv literal");
    return {std::move(base), std::move(jumps)};
}

std::string serialize(const BVFunction& u) {
    std::string out = "bv[pieces: " + serialize(u.base()) + "; jumps: ";
    bool first = true;
    for (const auto& j : u.explicit_jumps()) {
        if (!first) out += ", ";
        first = false;
        out += "(" + to_string(j.t) + "," + to_string(j.left) + "," + to_string(j.point) + "," + to_string(j.right) + ")";
    }
    return out + "]";
}

} // namespace ineqcert
