#pragma once

#include <json.hpp>

#include "ets/elasticity.hpp"
#include "ets/hypothesis.hpp"
#include "ets/ingest.hpp"
#include "ets/network.hpp"
#include "ets/ols.hpp"
#include "ets/rolling.hpp"

// JSON views of the result types. Field names are part of the artifact's
// documented output schema; see the repository README.

namespace ets::stats {
void to_json(nlohmann::json& j, const TestResult& r);
void to_json(nlohmann::json& j, const OlsFit& f);
}  // namespace ets::stats

namespace ets::ingest {
void to_json(nlohmann::json& j, const ParseReport& r);
void to_json(nlohmann::json& j, const FlowSummary& s);
}  // namespace ets::ingest

namespace ets {
void to_json(nlohmann::json& j, const WeeklyPriceSeries& s);
void to_json(nlohmann::json& j, const ReturnSeries& s);
}  // namespace ets

namespace ets::forecast {
void to_json(nlohmann::json& j, const ForecastMetrics& m);
void to_json(nlohmann::json& j, const RollingForecastResult& r);
}  // namespace ets::forecast

namespace ets::network {
void to_json(nlohmann::json& j, const CentralityTimeseries& t);
void to_json(nlohmann::json& j, const CentralityResult& r);
}  // namespace ets::network

namespace ets::elasticity {
void to_json(nlohmann::json& j, const ElasticityEstimate& e);
void to_json(nlohmann::json& j, const ElasticityReport& r);
}  // namespace ets::elasticity
