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
#include "cagnn/config.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cagnn/io.h"

namespace cagnn {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw std::invalid_argument("config: bad value for " + key + ": '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw std::invalid_argument("config: bad boolean for " + key + ": '" + value + "'");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() ? p : base / p;
}

void parse_into(ExperimentConfig& cfg, std::istream& in, const std::filesystem::path& base_dir,
                std::set<std::filesystem::path>& stack);

void include_file(ExperimentConfig& cfg, const std::filesystem::path& path,
                  std::set<std::filesystem::path>& stack) {
  std::filesystem::path key = std::filesystem::weakly_canonical(path);
  if (stack.count(key)) throw std::invalid_argument("config: include cycle at " + path.string());
  std::ifstream in(path);
  if (!in) throw FileNotFoundError("cannot open config file: " + path.string());
  stack.insert(key);
  try {
    parse_into(cfg, in, path.parent_path(), stack);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
  stack.erase(key);
}

void parse_into(ExperimentConfig& cfg, std::istream& in, const std::filesystem::path& base_dir,
                std::set<std::filesystem::path>& stack) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", lineno);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", lineno);
    try {
      if (key == "include") {
        include_file(cfg, resolve(base_dir, value), stack);
      } else {
        set_config_value(cfg, key, value, base_dir);
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), lineno);
    }
  }
}

void check_exists(const std::filesystem::path& p, const char* what) {
  if (p.empty()) throw std::invalid_argument(std::string("config: ") + what + " is not set");
  if (!std::filesystem::exists(p)) {
    throw FileNotFoundError(std::string("config: ") + what + " not found: " + p.string());
  }
}

}  // namespace

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value,
                      const std::filesystem::path& base_dir) {
  TrainConfig& t = cfg.train;
  if (key == "dataset") {
    t.dataset = value;
  } else if (key == "format") {
    if (value == "planetoid") {
      cfg.format = DataFormat::kPlanetoid;
    } else if (value == "canonical") {
      cfg.format = DataFormat::kCanonical;
    } else {
      throw std::invalid_argument("config: format must be planetoid or canonical");
    }
  } else if (key == "content") {
    cfg.content_file = resolve(base_dir, value);
  } else if (key == "cites") {
    cfg.cites_file = resolve(base_dir, value);
  } else if (key == "data") {
    cfg.canonical_file = resolve(base_dir, value);
  } else if (key == "out") {
    cfg.out_dir = resolve(base_dir, value);
  } else if (key == "variant") {
    cfg.variant = parse_variant(value);
  } else if (key == "eval_runs") {
    cfg.eval_runs = parse_number<int>(key, value);
  } else if (key == "seed") {
    t.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "num_clusters") {
    t.num_clusters = parse_number<int>(key, value);
  } else if (key == "hidden_dim") {
    t.hidden_dim = parse_number<int>(key, value);
  } else if (key == "embed_dim") {
    t.embed_dim = parse_number<int>(key, value);
  } else if (key == "head_hidden") {
    t.head_hidden = parse_number<int>(key, value);
  } else if (key == "lr") {
    t.lr = parse_number<double>(key, value);
  } else if (key == "weight_decay") {
    t.weight_decay = parse_number<double>(key, value);
  } else if (key == "epochs") {
    t.epochs = parse_number<int>(key, value);
  } else if (key == "warmup") {
    t.warmup = parse_number<int>(key, value);
  } else if (key == "updates") {
    t.updates = parse_number<int>(key, value);
  } else if (key == "pretrain_epochs") {
    t.pretrain_epochs = parse_number<int>(key, value);
  } else if (key == "steps_per_epoch") {
    t.steps_per_epoch = parse_number<int>(key, value);
  } else if (key == "neg_ratio") {
    t.neg_ratio = parse_number<int>(key, value);
  } else if (key == "ot_mu") {
    t.ot.mu = parse_number<double>(key, value);
  } else if (key == "ot_iters") {
    t.ot.iters = parse_number<int>(key, value);
  } else if (key == "tau_a") {
    t.refine.tau_a = parse_number<double>(key, value);
  } else if (key == "tau_r") {
    if (value == "dynamic") {
      t.refine.tau_r.reset();
    } else {
      t.refine.tau_r = parse_number<double>(key, value);
    }
  } else if (key == "restrict_candidates") {
    t.refine.restrict_candidates = parse_bool(key, value);
  } else if (key == "add_cap_factor") {
    t.refine.add_cap_factor = parse_number<std::size_t>(key, value);
  } else if (key == "kmeans_restarts") {
    t.kmeans.restarts = parse_number<int>(key, value);
  } else if (key == "kmeans_max_iterations") {
    t.kmeans.max_iterations = parse_number<int>(key, value);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  std::set<std::filesystem::path> stack;
  parse_into(cfg, in, base_dir, stack);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw FileNotFoundError("config file not found: " + path.string());
  }
  ExperimentConfig cfg;
  std::set<std::filesystem::path> stack;
  include_file(cfg, path, stack);
  if (cfg.format == DataFormat::kPlanetoid) {
    check_exists(cfg.content_file, "content");
    check_exists(cfg.cites_file, "cites");
  } else {
    check_exists(cfg.canonical_file, "data");
  }
  if (cfg.eval_runs < 1) throw std::invalid_argument("config: eval_runs must be >= 1");
  validate(cfg.train);
  return cfg;
}

std::string ExperimentConfig::canonical_text() const {
  const TrainConfig& t = train;
  std::ostringstream o;
  o << "dataset=" << t.dataset << '\n'
    << "format=" << (format == DataFormat::kPlanetoid ? "planetoid" : "canonical") << '\n';
  if (format == DataFormat::kPlanetoid) {
    o << "content=" << content_file.filename().string() << '\n'
      << "cites=" << cites_file.filename().string() << '\n';
  } else {
    o << "data=" << canonical_file.filename().string() << '\n';
  }
  o << "variant=" << variant_name(variant) << '\n'
    << "seed=" << t.seed << '\n'
    << "num_clusters=" << t.num_clusters << '\n'
    << "hidden_dim=" << t.hidden_dim << '\n'
    << "embed_dim=" << t.embed_dim << '\n'
    << "head_hidden=" << t.head_hidden << '\n'
    << "lr=" << format_double(t.lr) << '\n'
    << "weight_decay=" << format_double(t.weight_decay) << '\n'
    << "epochs=" << t.epochs << '\n'
    << "warmup=" << t.warmup << '\n'
    << "updates=" << t.updates << '\n'
    << "pretrain_epochs=" << t.pretrain_epochs << '\n'
    << "steps_per_epoch=" << t.steps_per_epoch << '\n'
    << "neg_ratio=" << t.neg_ratio << '\n'
    << "ot_mu=" << format_double(t.ot.mu) << '\n'
    << "ot_iters=" << t.ot.iters << '\n'
    << "tau_a=" << format_double(t.refine.tau_a) << '\n'
    << "tau_r=" << (t.refine.tau_r ? format_double(*t.refine.tau_r) : "dynamic") << '\n'
    << "restrict_candidates=" << (t.refine.restrict_candidates ? "true" : "false") << '\n'
    << "add_cap_factor=" << t.refine.add_cap_factor << '\n'
    << "kmeans_restarts=" << t.kmeans.restarts << '\n'
    << "kmeans_max_iterations=" << t.kmeans.max_iterations << '\n'
    << "eval_runs=" << eval_runs << '\n';
  return o.str();
}

Dataset load_dataset(const ExperimentConfig& cfg) {
  if (cfg.format == DataFormat::kPlanetoid) return load_planetoid(cfg.content_file, cfg.cites_file);
  return load_canonical(cfg.canonical_file);
}

}  // namespace cagnn
