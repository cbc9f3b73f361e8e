/**
 * Copyright 2026 The cagnn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef CAGNN_CONFIG_H_
#define CAGNN_CONFIG_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cagnn/graph.h"
#include "cagnn/pipeline.h"

namespace cagnn {

enum class DataFormat { kPlanetoid, kCanonical };

struct ExperimentConfig {
  TrainConfig train;
  DataFormat format = DataFormat::kCanonical;
  std::filesystem::path content_file;    // planetoid
  std::filesystem::path cites_file;      // planetoid
  std::filesystem::path canonical_file;  // canonical
  std::filesystem::path out_dir = "out";
  Variant variant = Variant::kFull;
  int eval_runs = 10;
  // Fully resolved key=value lines in a fixed order; hashed for manifests.
  std::string canonical_text() const;
};

// Flat `key = value` text. `include = <path>` pulls in another file
// (relative to the including file) whose keys later lines may override.
// Unknown keys, malformed lines and include cycles are errors; referenced
// data files must exist.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir);

// Applies one key to the config; throws std::invalid_argument on an unknown
// key or bad value. Paths are resolved against base_dir.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value,
                      const std::filesystem::path& base_dir);

Dataset load_dataset(const ExperimentConfig& config);

}  // namespace cagnn

#endif  // CAGNN_CONFIG_H_
