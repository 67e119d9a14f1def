#pragma once

#include <json.hpp>

#include "tailgate/angular.hpp"
#include "tailgate/changepoint.hpp"
#include "tailgate/pvalpath.hpp"

namespace tailgate {
namespace json_io {

nlohmann::json path_to_json(const pvalpath::PValuePath& path);
pvalpath::PValuePath path_from_json(const nlohmann::json& j);

nlohmann::json fit_to_json(const changepoint::SegmentedFit& fit);
nlohmann::json selection_to_json(const changepoint::SelectionResult& sel);
nlohmann::json angular_to_json(const angular::AngularEstimate& est);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace json_io
}  // namespace tailgate
