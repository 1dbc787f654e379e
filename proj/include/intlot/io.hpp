#pragma once

#include "intlot/market.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace intlot::io {

using json = nlohmann::ordered_json;

/// Scalar literal grammar: integer, "p/q", decimal (float mode only),
/// or {"q": "p/q", "terms": {"pi": "u/v", ...}}.
Scalar scalar_from_json(const json& j);
json scalar_to_json(const Scalar& s);

market::MarketModel model_from_json(const json& j);
json model_to_json(const market::MarketModel& m);

market::Claim claim_from_json(const json& j, int n);
json claim_to_json(const market::Claim& c);

std::vector<Scalar> measure_from_json(const json& j, int n);

/// Adapted price process values[t][state] for claim-price extensions.
std::vector<std::vector<Scalar>> process_from_json(const json& j, int periods, int n);

json load_json_file(const std::string& path);
market::MarketModel load_model(const std::string& path);
market::Claim load_claim(const std::string& path, int n);

} // namespace intlot::io
