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
// Command-line driver: ingest, train, eval and ablate.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "cagnn/checkpoint.h"
#include "cagnn/config.h"
#include "cagnn/evaluate.h"
#include "cagnn/graph.h"
#include "cagnn/io.h"
#include "cagnn/pipeline.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitMissingInput = 2;

void require_file(const fs::path& p) {
  if (!fs::exists(p)) throw cagnn::FileNotFoundError("file not found: " + p.string());
}

int thread_count() {
  const char* env = std::getenv("CAGNN_NUM_THREADS");
  int n = env ? std::atoi(env) : 1;
  return n > 0 ? n : 1;
}

std::string summary(const cagnn::Dataset& d) {
  std::ostringstream out;
  out << "n=" << d.graph.num_nodes() << " edges=" << d.graph.num_edges()
      << " m=" << d.features.cols() << " classes=" << d.num_classes;
  return out.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string format = "planetoid";
  std::vector<std::string> inputs;
  std::string out;
};

int run_ingest(const IngestArgs& a) {
  cagnn::Dataset data;
  if (a.format == "planetoid") {
    if (a.inputs.size() != 2) {
      std::cerr << "ingest: planetoid format needs <content> <cites>\n";
      return kExitMissingInput;
    }
    require_file(a.inputs[0]);
    require_file(a.inputs[1]);
    data = cagnn::load_planetoid(a.inputs[0], a.inputs[1]);
    const auto& s = data.stats;
    std::cerr << "citation_lines=" << s.citation_lines << " unique_edges=" << data.graph.num_edges()
              << " duplicates=" << s.duplicate_pairs << " dropped_unknown=" << s.dropped_unknown
              << " dropped_self_loops=" << s.dropped_self_loops << '\n';
  } else if (a.format == "canonical") {
    if (a.inputs.size() != 1) {
      std::cerr << "ingest: canonical format needs exactly one input file\n";
      return kExitMissingInput;
    }
    require_file(a.inputs[0]);
    data = cagnn::load_canonical(a.inputs[0]);
  } else {
    std::cerr << "ingest: unknown format '" << a.format << "'\n";
    return kExitMissingInput;
  }
  if (!a.out.empty()) {
    if (a.out == "-") {
      cagnn::write_canonical(std::cout, data);
      std::cerr << summary(data) << '\n';
      return 0;
    }
    cagnn::write_canonical(fs::path(a.out), data);
    if (!(cagnn::load_canonical(a.out).graph == data.graph)) {
      std::cerr << "ingest: re-read of " << a.out << " does not match\n";
      return kExitFailure;
    }
  }
  std::cout << summary(data) << '\n';
  return 0;
}

// ----------------------------------------------------------------- train

struct TrainArgs {
  std::string config;
  std::string out;
  std::string variant;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

cagnn::ExperimentConfig resolve_config(const std::string& path, const std::string& variant,
                                       const std::string& out, std::uint64_t seed,
                                       bool seed_set) {
  require_file(path);
  cagnn::ExperimentConfig cfg = cagnn::load_config(path);
  if (!variant.empty()) cfg.variant = cagnn::parse_variant(variant);
  if (!out.empty()) cfg.out_dir = out;
  if (seed_set) cfg.train.seed = seed;
  return cfg;
}

int run_train(const TrainArgs& a) {
  cagnn::ExperimentConfig cfg = resolve_config(a.config, a.variant, a.out, a.seed, a.seed_set);
  cagnn::Dataset data = cagnn::load_dataset(cfg);
  fs::create_directories(cfg.out_dir);
  const fs::path out = cfg.out_dir;
  cagnn::TrainConfig tc = cagnn::apply_variant(cfg.train, cfg.variant);

  cagnn::TrainHooks hooks;
  hooks.on_epoch = [](const cagnn::EpochRecord& r) {
    std::cerr << "epoch " << r.epoch << " loss=" << r.loss << " purity=" << r.purity
              << " edges=" << r.num_edges << (r.updated ? " [update]" : "") << '\n';
  };
  hooks.on_checkpoint = [&](const cagnn::Checkpoint& ck) {
    cagnn::save_checkpoint(out / ("checkpoint_epoch" + std::to_string(ck.epoch) + ".txt"), ck);
  };
  cagnn::TrainResult res = cagnn::train(data, tc, hooks);

  cagnn::write_matrix_tsv(out / "embeddings.tsv", res.embeddings);
  cagnn::write_matrix_tsv(out / "assignments.tsv", res.assignments);
  {
    std::ofstream t(out / "trace.csv");
    cagnn::write_trace_csv(t, res.trace);
  }
  cagnn::save_checkpoint(out / "checkpoint.txt",
                         cagnn::Checkpoint{res.params, res.adam, res.rng, tc.epochs});
  {
    std::ofstream e(out / "refined_edges.txt");
    cagnn::write_edge_list(e, res.graph);
  }

  const std::string cfg_text = cfg.canonical_text();
  cagnn::KeyValues manifest;
  manifest["config_hash"] = cagnn::hex64(cagnn::fnv1a64(cfg_text));
  manifest["seed"] = std::to_string(tc.seed);
  manifest["variant"] = std::string(cagnn::variant_name(cfg.variant));
  manifest["cagnn_version"] = CAGNN_VERSION;
  manifest["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                              std::to_string(EIGEN_MAJOR_VERSION) + "." +
                              std::to_string(EIGEN_MINOR_VERSION);
  manifest["threads"] = std::to_string(thread_count());
  manifest["dataset"] = tc.dataset;
  manifest["nodes"] = std::to_string(data.graph.num_nodes());
  manifest["edges_original"] = std::to_string(data.graph.num_edges());
  manifest["edges_refined"] = std::to_string(res.graph.num_edges());
  manifest["embeddings_hash"] = cagnn::hex64(cagnn::fnv1a64(slurp(out / "embeddings.tsv")));
  cagnn::write_key_values(out / "manifest.txt", manifest);

  // Validate what was written before reporting success.
  cagnn::DenseMatrix back = cagnn::read_matrix_tsv(out / "embeddings.tsv");
  if (back.rows() != res.embeddings.rows() || back.cols() != res.embeddings.cols()) {
    std::cerr << "train: embeddings file failed validation\n";
    return kExitFailure;
  }
  for (const char* f : {"assignments.tsv", "trace.csv", "checkpoint.txt", "manifest.txt",
                        "refined_edges.txt"}) {
    if (!fs::exists(out / f)) {
      std::cerr << "train: missing artifact " << (out / f).string() << '\n';
      return kExitFailure;
    }
  }
  std::cout << "wrote " << out.string() << " (" << res.embeddings.rows() << "x"
            << res.embeddings.cols() << " embeddings, " << res.graph.num_edges()
            << " refined edges)\n";
  return 0;
}

// ------------------------------------------------------------------ eval

struct EvalArgs {
  std::string embeddings;
  std::string data;
  std::string config;
  std::string task = "cluster";
  std::string out;
  std::uint64_t seed = 0;
  int runs = 10;
};

int run_eval(const EvalArgs& a) {
  require_file(a.embeddings);
  cagnn::Dataset data;
  if (!a.data.empty()) {
    require_file(a.data);
    data = cagnn::load_canonical(a.data);
  } else if (!a.config.empty()) {
    require_file(a.config);
    data = cagnn::load_dataset(cagnn::load_config(a.config));
  } else {
    std::cerr << "eval: pass --data or --config\n";
    return kExitMissingInput;
  }
  if (data.labels.empty()) {
    std::cerr << "eval: dataset has no labels\n";
    return kExitFailure;
  }
  cagnn::DenseMatrix h = cagnn::read_matrix_tsv(fs::path(a.embeddings));
  if (static_cast<std::size_t>(h.rows()) != data.graph.num_nodes()) {
    std::cerr << "eval: embeddings have " << h.rows() << " rows but the dataset has "
              << data.graph.num_nodes() << " nodes\n";
    return kExitFailure;
  }
  cagnn::EvalReport report;
  if (a.task == "cluster") {
    cagnn::ClusteringEvalOptions o;
    o.runs = a.runs;
    report = cagnn::evaluate_clustering(h, data.labels, data.num_classes, a.seed, o);
  } else if (a.task == "classify") {
    cagnn::ClassificationEvalOptions o;
    o.runs = a.runs;
    report = cagnn::evaluate_classification(h, data.labels, a.seed, o);
  } else {
    std::cerr << "eval: unknown task '" << a.task << "' (cluster or classify)\n";
    return kExitMissingInput;
  }
  fs::path out = a.out.empty() ? fs::path(a.embeddings).parent_path() / ("report_" + a.task + ".txt")
                               : fs::path(a.out);
  cagnn::write_report(out, report);
  std::cout << cagnn::summary_line(report) << '\n';
  return 0;
}

// ---------------------------------------------------------------- ablate

struct AblateArgs {
  std::string config;
  std::string out;
  std::vector<std::string> variants;
  int seeds = 10;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int run_ablate(const AblateArgs& a) {
  cagnn::ExperimentConfig cfg = resolve_config(a.config, "", a.out, a.seed, a.seed_set);
  cagnn::Dataset data = cagnn::load_dataset(cfg);
  if (data.labels.empty()) {
    std::cerr << "ablate: dataset has no labels\n";
    return kExitFailure;
  }
  std::vector<std::string> names = a.variants;
  if (names.empty()) names = {"full", "no-refine", "add-only", "remove-only", "soft"};
  fs::create_directories(cfg.out_dir);
  std::ofstream csv(cfg.out_dir / "ablation.csv");
  csv << "variant,seed,micro_f1,macro_f1,nmi,label_purity_original,label_purity_refined,edges\n";
  cagnn::ClusteringEvalOptions eval;
  eval.runs = cfg.eval_runs;
  for (const std::string& name : names) {
    cagnn::Variant v = cagnn::parse_variant(name);
    double micro = 0.0, nmi = 0.0;
    for (int s = 0; s < a.seeds; ++s) {
      cagnn::TrainConfig tc = cfg.train;
      tc.seed = cfg.train.seed + static_cast<std::uint64_t>(s);
      cagnn::AblationResult r = cagnn::run_ablation(data, tc, v, eval);
      csv << name << ',' << tc.seed << ',' << cagnn::format_double(r.clustering.micro_f1) << ','
          << cagnn::format_double(r.clustering.macro_f1) << ','
          << cagnn::format_double(r.clustering.nmi) << ','
          << cagnn::format_double(r.truth_purity_original) << ','
          << cagnn::format_double(r.truth_purity_refined) << ',' << r.train.graph.num_edges()
          << '\n';
      micro += r.clustering.micro_f1;
      nmi += r.clustering.nmi;
    }
    std::cout << name << ": mean micro_f1=" << micro / a.seeds << " nmi=" << nmi / a.seeds
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Eigen::setNbThreads(thread_count());

  CLI::App app{"cagnn: cluster-aware graph representation learning"};
  app.set_version_flag("--version", CAGNN_VERSION);
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Convert a dataset to the canonical format");
  c_ingest->add_option("--format", ingest.format, "planetoid or canonical")
      ->check(CLI::IsMember({"planetoid", "canonical"}));
  c_ingest->add_option("inputs", ingest.inputs, "<content> <cites> | <canonical file>")
      ->required();
  c_ingest->add_option("--out", ingest.out, "Canonical output file ('-' for stdout)");

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "Pretrain and train, then export artifacts");
  c_train->add_option("--config", train.config, "Experiment config file")->required();
  c_train->add_option("--out", train.out, "Output directory (overrides config)");
  c_train->add_option("--variant", train.variant,
                      "full, no-refine, add-only, remove-only or soft");
  auto* train_seed = c_train->add_option("--seed", train.seed, "Random seed (overrides config)");

  EvalArgs eval;
  auto* c_eval = app.add_subcommand("eval", "Evaluate embeddings against ground-truth labels");
  c_eval->add_option("--embeddings", eval.embeddings, "Embedding TSV")->required();
  c_eval->add_option("--data", eval.data, "Canonical dataset file");
  c_eval->add_option("--config", eval.config, "Experiment config naming the dataset");
  c_eval->add_option("--task", eval.task, "cluster or classify");
  c_eval->add_option("--seed", eval.seed, "Random seed");
  c_eval->add_option("--runs", eval.runs, "Number of runs to average")
      ->check(CLI::PositiveNumber);
  c_eval->add_option("--out", eval.out, "Report file");

  AblateArgs ablate;
  auto* c_ablate = app.add_subcommand("ablate", "Compare refining variants over seeds");
  c_ablate->add_option("--config", ablate.config, "Experiment config file")->required();
  c_ablate->add_option("--out", ablate.out, "Output directory (overrides config)");
  c_ablate->add_option("--variant", ablate.variants, "Variants to run (default: all)");
  c_ablate->add_option("--seeds", ablate.seeds, "Seeds per variant")->check(CLI::PositiveNumber);
  auto* ablate_seed = c_ablate->add_option("--seed", ablate.seed, "First seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_ingest->parsed()) return run_ingest(ingest);
    if (c_train->parsed()) {
      train.seed_set = train_seed->count() > 0;
      return run_train(train);
    }
    if (c_eval->parsed()) return run_eval(eval);
    if (c_ablate->parsed()) {
      ablate.seed_set = ablate_seed->count() > 0;
      return run_ablate(ablate);
    }
  } catch (const cagnn::FileNotFoundError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMissingInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
