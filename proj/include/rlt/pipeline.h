// Copyright 2026 The RLT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RLT_PIPELINE_H
#define RLT_PIPELINE_H

#include <filesystem>
#include <functional>
#include <map>
#include <string>

#include "json.hpp"
#include "rlt/config.h"

namespace rlt {

/// Structured report plus a CSV table for plotting.
struct Report {
    nlohmann::json json;
    std::string csv;
};

/// Maps, periods and amplification tables for every EAC. Throws
/// ApplicabilityError for singular gates or units without a principal log.
Report analyze(const ExperimentConfig& cfg);

/// Data files keyed by relative path "data/<eac>_n<n>.json".
std::map<std::string, nlohmann::json> simulate(const ExperimentConfig& cfg);

/// Returns the parsed data file at a relative path; throws DataError if absent.
using DataLoader = std::function<nlohmann::json(const std::string&)>;

DataLoader directory_loader(const std::filesystem::path& dir);
DataLoader memory_loader(const std::map<std::string, nlohmann::json>& files);

std::string data_file_name(const std::string& eac, long long n);

/// QPT inversion, log extraction and constrained fit of all data.
Report fit(const ExperimentConfig& cfg, const DataLoader& load);

/// Quadratic-order residual ratios and BCH comparison rows.
Report verify(const ExperimentConfig& cfg);

/// Writes the JSON report and, when the CSV is non-empty, the CSV table.
void write_report(const std::filesystem::path& out_dir, const std::string& json_name,
                  const std::string& csv_name, const Report& report);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace rlt

#endif  // RLT_PIPELINE_H
