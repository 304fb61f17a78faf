#pragma once

#include <string>

#include "json.hpp"
#include "nullcert/certify.hpp"
#include "nullcert/poly.hpp"
#include "nullcert/search.hpp"

namespace nullcert {

using ordered_json = nlohmann::ordered_json;

/// [[i, j, coeff], ...]
ordered_json to_json(const BivariatePolynomial& f);
/// Throws ConfigError on malformed input.
BivariatePolynomial polynomial_from_json(PrimeField field, const nlohmann::json& j);

ordered_json to_json(const Certificate& cert);
/// Throws ConfigError on malformed or inconsistent input.
Certificate certificate_from_json(const nlohmann::json& j);

ordered_json to_json(const Report& report);
/// Header plus one row per prime.
std::string report_csv(const Report& report);

ordered_json to_json(const TightExample& example);

}  // namespace nullcert
