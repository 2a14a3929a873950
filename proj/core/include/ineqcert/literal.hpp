#pragma once

#include "ineqcert/bv.hpp"
#include "ineqcert/piecewise.hpp"

#include <string>
#include <string_view>

namespace ineqcert {

/// `pw[(t0,t1): <poly>; (t1,t2): <poly>; ...]`; pieces must be contiguous.
PiecewisePoly parse_piecewise(std::string_view text);
std::string serialize(const PiecewisePoly& f);

/// `bv[pieces: <pw>; jumps: (t, left, point, right), ...]`; the jumps list may be empty.
BVFunction parse_bv(std::string_view text);
std::string serialize(const BVFunction& u);

} // namespace ineqcert
