#pragma once

#include "ineqcert/inequalities.hpp"
#include "ineqcert/quadrature.hpp"
#include "ineqcert/verify.hpp"

#include <nlohmann/json.hpp>

namespace ineqcert {

/// {"decimal": "...", "exact": "p/q"}; "exact" only when the value is known exactly.
/// Non-finite values print as "inf", "-inf" or "nan".
nlohmann::json to_json(const Number& n);
nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const RangeBound& r);
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const CertifiedIntegral& c);
nlohmann::json to_json(const TrialDescriptor& d);
nlohmann::json to_json(const Profile& p);
nlohmann::json to_json(const SweepReport& s);
nlohmann::json to_json(const SharpnessCase& s);

std::string_view to_string(FunctionKind k);

} // namespace ineqcert
