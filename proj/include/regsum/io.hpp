#pragma once

#include <string>

#include <json.hpp>

#include "regsum/power_series.hpp"
#include "regsum/regularize.hpp"
#include "regsum/summation.hpp"

namespace regsum {

/// 12 significant digits, `%.12g`.
std::string format_double(double value);
/// The double that format_double(value) denotes.
double round_to_printed(double value);

nlohmann::json to_json(const ConvergenceReport& report);

/// `exact` when every derivative came from a closed form, else the method literal.
std::string method_label(const RegSumResult& result);

/// { value_exact, value_float, method, order_used, terms_used, provenance }
nlohmann::json to_json(const RegSumResult& result);

/// Array of `"p/q"` strings for c_0..c_N.
nlohmann::json to_json(const PowerSeries& series);
PowerSeries power_series_from_json(const nlohmann::json& doc);

/// Array of decimal integer strings.
nlohmann::json to_json(const EulerTable& table);

} // namespace regsum
