#pragma once

#include <string>

#include "grassdim/formulas.hpp"
#include "grassdim/terracini.hpp"

#include "json.hpp"

namespace grassdim {

void to_json(nlohmann::json& j, const SecantParams& p);
void from_json(const nlohmann::json& j, SecantParams& p);

void to_json(nlohmann::json& j, const Prediction& p);
void from_json(const nlohmann::json& j, Prediction& p);

void to_json(nlohmann::json& j, const DimensionReport& r);
void from_json(const nlohmann::json& j, DimensionReport& r);

void to_json(nlohmann::json& j, const BenchResult& b);

/// Fixed column order shared by every CSV the tool emits:
/// n,k,s,r,cone,proj,virtual,expected,fiber,defect,fiber_match
std::string csv_header();
std::string csv_row(const DimensionReport& r);

/// Human-readable block for terminal output.
std::string text_report(const DimensionReport& r);
std::string text_prediction(const Prediction& p);
std::string text_bench(const BenchResult& b);

}  // namespace grassdim
