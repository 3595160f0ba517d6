#pragma once

#include "siegel/eisenstein.hpp"
#include "siegel/hecke.hpp"
#include "siegel/lambda.hpp"

#include <json.hpp>

#include <string>

namespace siegel::app {

using nlohmann::json;

// Rationals travel as "num/den" (or "num" when integral).
json to_json(const Rational& q);
Rational rational_from_json(const json& j);

// p-adic numbers as [valuation, "unit", abs_precision] plus the prime kept
// alongside by the enclosing document. Zero is [A, "0", A].
json to_json(const PadicNumber& x);
PadicNumber padic_from_json(const json& j, std::int64_t p);

// 2T as nested integer arrays.
json to_json(const HalfIntegralMatrix& T);
HalfIntegralMatrix matrix_from_json(const json& j);

json to_json(const LambdaElement& f);
LambdaElement lambda_from_json(const json& j);

json to_json(const FracLambda& f);
FracLambda frac_lambda_from_json(const json& j);

json to_json(const QPoly& f);
QPoly qpoly_from_json(const json& j);

json to_json(const SatakeParams& s);
SatakeParams satake_from_json(const json& j);

// q-expansion documents: {spec, bound, entries: [{G, value}]}.
json expansion_json(const QExpansion<Rational>& e, const json& spec);
json expansion_json(const QExpansion<PadicNumber>& e, const json& spec, std::int64_t p);
json expansion_json(const QExpansion<LambdaElement>& e, const json& spec);

QExpansion<Rational> rational_expansion_from_json(const json& doc);
QExpansion<PadicNumber> padic_expansion_from_json(const json& doc);
QExpansion<LambdaElement> lambda_expansion_from_json(const json& doc);

} // namespace siegel::app
