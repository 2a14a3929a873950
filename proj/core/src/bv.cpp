#include "ineqcert/bv.hpp"

#include "ineqcert/errors.hpp"

#include <algorithm>

namespace ineqcert {

BVFunction::BVFunction(PiecewisePoly base, std::vector<JumpRecord> jumps)
    : base_(std::move(base)), explicit_(std::move(jumps)) {
    const Rational a = base_.span().a();
    const Rational b = base_.span().b();
    for (std::size_t i = 0; i < explicit_.size(); ++i) {
        const auto& j = explicit_[i];
        if (!span().contains(j.t)) throw OutOfInterval("jump location " + to_string(j.t) + " outside the interval");
        if (i > 0 && !(explicit_[i - 1].t < j.t)) throw PreconditionError("jump locations must be distinct and sorted");
        if (j.t > a && j.left != base_.left_limit(j.t))
            throw PreconditionError("jump at " + to_string(j.t) + ": left value " + to_string(j.left) +
                                    " differs from the left limit of the pieces");
        if (j.t < b && j.right != base_.right_limit(j.t))
            throw PreconditionError("jump at " + to_string(j.t) + ": right value " + to_string(j.right) +
                                    " differs from the right limit of the pieces");
    }
    jumps_ = explicit_;
    for (std::size_t i = 1; i + 1 < base_.breakpoints().size(); ++i) {
        const Rational& t = base_.breakpoints()[i];
        Rational l = base_.left_limit(t);
        Rational r = base_.right_limit(t);
        if (l == r) continue;
        bool covered = std::any_of(explicit_.begin(), explicit_.end(), [&](const JumpRecord& j) { return j.t == t; });
        if (!covered) jumps_.push_back({t, l, base_(t), r});
    }
    std::sort(jumps_.begin(), jumps_.end(), [](const JumpRecord& x, const JumpRecord& y) { return x.t < y.t; });
    // endpoint records carry the base limit on their meaningless side, for uniform output
    for (auto& j : jumps_) {
        if (j.t == a) j.left = j.point;
        if (j.t == b) j.right = j.point;
    }
}

Rational BVFunction::operator()(const Rational& x) const {
    for (const auto& j : jumps_)
        if (j.t == x) return j.point;
    return base_(x);
}

Rational BVFunction::mass(const JumpRecord& j) const {
    if (j.t == span().a()) return j.right - j.point;
    if (j.t == span().b()) return j.point - j.left;
    return j.right - j.left;
}

Rational BVFunction::variation(const JumpRecord& j) const {
    if (j.t == span().a()) return abs(j.right - j.point);
    if (j.t == span().b()) return abs(j.point - j.left);
    return abs(j.point - j.left) + abs(j.right - j.point);
}

} // namespace ineqcert
