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
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "cagnn/io.h"
#include "cagnn/pipeline.h"
#include "common/oracles.h"

namespace cagnn {
namespace {

TrainConfig small_config(std::uint64_t seed) {
  TrainConfig c;
  c.num_clusters = 2;
  c.hidden_dim = 16;
  c.embed_dim = 16;
  c.head_hidden = 16;
  c.epochs = 15;
  c.warmup = 1;
  c.updates = 7;
  c.pretrain_epochs = 100;
  c.kmeans.restarts = 3;
  c.seed = seed;
  return c;
}

std::vector<int> schedule_by_formula(int e, int w, int u) {
  std::vector<int> out;
  for (int i = 1; i <= u; ++i) {
    int s = static_cast<int>(std::floor(static_cast<double>(e - w) * i / (u + 1))) + w;
    s = std::min(std::max(s, w + 1), e);
    if (out.empty() || out.back() != s) out.push_back(s);
  }
  return out;
}

TEST(Schedule, DefaultCora) {
  EXPECT_EQ(update_schedule(15, 1, 7), (std::vector<int>{2, 4, 6, 8, 9, 11, 13}));
}

TEST(Schedule, SingleUpdateAndClipping) {
  EXPECT_EQ(update_schedule(3, 1, 1), std::vector<int>{2});
  // More updates than epochs after warmup: clipped and deduplicated.
  EXPECT_EQ(update_schedule(4, 2, 5), std::vector<int>{3});
  EXPECT_THROW(update_schedule(5, 5, 1), std::invalid_argument);
  EXPECT_THROW(update_schedule(5, 1, 0), std::invalid_argument);
}

TEST(Schedule, MatchesFormulaAndIsStrictlyIncreasing) {
  for (int e = 1; e <= 80; ++e) {
    for (int w = 0; w < e; ++w) {
      for (int u = 1; u <= 12; ++u) {
        std::vector<int> s = update_schedule(e, w, u);
        EXPECT_EQ(s, schedule_by_formula(e, w, u)) << e << ' ' << w << ' ' << u;
        for (std::size_t i = 0; i < s.size(); ++i) {
          EXPECT_GT(s[i], w);
          EXPECT_LE(s[i], e);
          if (i > 0) {
            EXPECT_GT(s[i], s[i - 1]);
          }
        }
      }
    }
  }
}

TEST(Config, PresetsValidate) {
  EXPECT_NO_THROW(validate(TrainConfig::cora()));
  EXPECT_NO_THROW(validate(TrainConfig::citeseer()));
  EXPECT_NO_THROW(validate(TrainConfig::pubmed()));
  TrainConfig bad = TrainConfig::cora();
  bad.warmup = bad.epochs;
  EXPECT_THROW(validate(bad), std::invalid_argument);
  bad = TrainConfig::cora();
  bad.num_clusters = 1;
  EXPECT_THROW(validate(bad), std::invalid_argument);
}

TEST(Variants, RoundTripNames) {
  for (Variant v : {Variant::kFull, Variant::kNoRefine, Variant::kAddOnly, Variant::kRemoveOnly,
                    Variant::kSoft}) {
    EXPECT_EQ(parse_variant(variant_name(v)), v);
  }
  EXPECT_THROW(parse_variant("bogus"), std::invalid_argument);
}

TEST(Pretrain, LossDecreasesOnTwoCliques) {
  Dataset d = testing::two_clique_dataset(10, 6, 1.0, 0.3, 1);
  TrainConfig cfg = small_config(1);
  std::mt19937_64 rng(1);
  ModelParams p = init_params({6, 16, 16, 16, 2}, rng);
  ModelParams before = p;
  std::vector<double> losses;
  pretrain(d, cfg, p, rng, &losses);
  ASSERT_EQ(losses.size(), 100u);
  EXPECT_LT(losses.back(), losses.front());
  // The head is untouched by pretraining.
  EXPECT_EQ(p.head_w1, before.head_w1);
  EXPECT_EQ(p.head_b2, before.head_b2);
  EXPECT_NE(p.gcn_weights[0], before.gcn_weights[0]);
}

TEST(Train, AssignmentsFrozenBetweenUpdates) {
  Dataset d = testing::two_clique_dataset(10, 6, 1.0, 0.3, 2);
  TrainConfig cfg = small_config(2);
  TrainResult r = train(d, cfg);
  ASSERT_EQ(r.trace.size(), 15u);
  std::set<int> sched(r.schedule.begin(), r.schedule.end());
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    const EpochRecord& cur = r.trace[i];
    EXPECT_EQ(cur.updated, sched.count(cur.epoch) == 1);
    if (!cur.updated) {
      EXPECT_EQ(cur.purity, r.trace[i - 1].purity);
      EXPECT_EQ(cur.col_min, r.trace[i - 1].col_min);
      EXPECT_EQ(cur.num_edges, r.trace[i - 1].num_edges);
    }
  }
}

TEST(Train, BitwiseDeterministic) {
  Dataset d = testing::two_clique_dataset(8, 5, 1.0, 0.4, 3);
  TrainConfig cfg = small_config(3);
  TrainResult a = train(d, cfg);
  TrainResult b = train(d, cfg);
  EXPECT_EQ(a.embeddings, b.embeddings);
  EXPECT_EQ(a.assignments, b.assignments);
  EXPECT_EQ(a.graph, b.graph);
  std::ostringstream ta, tb;
  write_matrix_tsv(ta, a.embeddings);
  write_matrix_tsv(tb, b.embeddings);
  EXPECT_EQ(ta.str(), tb.str());
  cfg.seed = 4;
  EXPECT_NE(train(d, cfg).embeddings, a.embeddings);
}

TEST(Train, NoRefineKeepsTheOriginalGraph) {
  Dataset d = testing::two_clique_dataset(8, 5, 1.0, 0.4, 5);
  TrainResult r = train(d, apply_variant(small_config(5), Variant::kNoRefine));
  EXPECT_EQ(r.graph, d.graph);
  for (const EpochRecord& rec : r.trace) EXPECT_EQ(rec.num_edges, d.graph.num_edges());
}

TEST(Train, VariantEdgeSetRelations) {
  Dataset d = testing::two_clique_dataset(8, 5, 1.0, 0.4, 6);
  TrainConfig cfg = small_config(6);
  cfg.updates = 1;
  cfg.epochs = 3;
  auto edge_set = [](const Graph& g) { return std::set<Edge>(g.edges().begin(), g.edges().end()); };
  std::set<Edge> e0 = edge_set(d.graph);
  std::set<Edge> removed = edge_set(train(d, apply_variant(cfg, Variant::kRemoveOnly)).graph);
  std::set<Edge> added = edge_set(train(d, apply_variant(cfg, Variant::kAddOnly)).graph);
  TrainResult soft = train(d, apply_variant(cfg, Variant::kSoft));
  EXPECT_TRUE(std::includes(e0.begin(), e0.end(), removed.begin(), removed.end()));
  EXPECT_TRUE(std::includes(added.begin(), added.end(), e0.begin(), e0.end()));
  EXPECT_EQ(soft.graph, d.graph);
  EXPECT_EQ(soft.edge_weights.size(), d.graph.num_edges());
}

TEST(Train, SeparatesTwoCliquesAndDropsTheBridge) {
  int good = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Dataset d = testing::two_clique_dataset(10, 6, 1.0, 0.3, 100 + seed);
    TrainResult r = train(d, small_config(seed));
    LabelVector lab = hard_labels(r.assignments);
    bool split = lab[0] != lab[10];
    for (int i = 0; i < 20; ++i) split = split && lab[i] == lab[i < 10 ? 0 : 10];
    if (split && !r.graph.has_edge(9, 10)) ++good;
  }
  EXPECT_GE(good, 4);
}

TEST(Train, CheckpointHookFiresOnEveryUpdate) {
  Dataset d = testing::two_clique_dataset(6, 4, 1.0, 0.4, 7);
  TrainConfig cfg = small_config(7);
  std::vector<int> epochs;
  TrainHooks hooks;
  hooks.on_checkpoint = [&](const Checkpoint& ck) { epochs.push_back(ck.epoch); };
  TrainResult r = train(d, cfg, hooks);
  EXPECT_EQ(epochs, r.schedule);
}

TEST(Train, RejectsTooManyClusters) {
  Dataset d = testing::two_clique_dataset(2, 3, 1.0, 0.1, 8);
  TrainConfig cfg = small_config(8);
  cfg.num_clusters = 5;
  EXPECT_THROW(train(d, cfg), std::invalid_argument);
}

TEST(LabelPurity, Examples) {
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_DOUBLE_EQ(label_purity(g, {0, 0, 1, 1}), 2.0 / 3.0);
  EXPECT_EQ(label_purity(Graph(3), {0, 1, 2}), 1.0);
}

TEST(Trace, CsvHeaderAndRow) {
  EpochRecord r;
  r.epoch = 2;
  r.loss = 0.5;
  r.purity = 1;
  r.col_min = 10;
  r.col_max = 10;
  r.num_edges = 3;
  r.updated = true;
  std::ostringstream out;
  write_trace_csv(out, {r});
  EXPECT_EQ(out.str(),
            "epoch,loss,purity,col_sum_min,col_sum_max,edges,updated\n2,0.5,1,10,10,3,1\n");
}

}  // namespace
}  // namespace cagnn
