// Copyright 2026 The adaptix authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#ifndef ADAPTIX_EXPERIMENT_HPP_
#define ADAPTIX_EXPERIMENT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "adaptix/csv_io.hpp"
#include "adaptix/diagnostics.hpp"
#include "adaptix/oracles.hpp"
#include "adaptix/optimizers.hpp"
#include "adaptix/problems.hpp"
#include "adaptix/svg_plot.hpp"
#include "adaptix/toml_lite.hpp"

namespace adaptix {

// Declarative run description, built from a TOML document with sections
// [problem], [noise], [optimizer], [run] and optional [projection] and
// [diagnose]. Immutable once built; one optimizer/oracle pair is created
// fresh per seed.
struct ExperimentConfig {
  TomlDocument doc;
  std::string fingerprint;

  Problem problem;
  NoiseModel noise;
  OptimizerFactory make_optimizer;
  std::string optimizer_label;
  double eta0 = 0.0;  // ranking tie-break

  int iters = 0;
  std::vector<int64_t> seeds;
  int record_every = 1;
  Vector x0;

  // [diagnose] knobs
  Vector scales;          // scale-freeness audit factors
  double tail_frac = 0.1;
  double grid_lo = -10.0, grid_hi = 10.0;
  int grid_n = 10001;
};

// Aggregate over seeds. Confidence intervals are mean +/- 1.96*sd/sqrt(n).
// wall_ms is informational only and is kept out of the deterministic CSV.
struct SummaryRow {
  std::string fingerprint;
  std::string params;
  double final_f_mean = 0.0;
  double final_f_ci = 0.0;
  double tail_grad_mean = 0.0;
  double tail_grad_ci = 0.0;
  int diverged = 0;  // count of diverged seeds
  double wall_ms = 0.0;
};

struct RunOutcome {
  std::vector<TrajectoryRecord> records;  // sorted by (seed, iter)
  SummaryRow summary;
};

// Full grid-point/config fingerprint: stable 64-bit hash of the
// canonicalized document, rendered as 16 hex digits.
std::string config_fingerprint(const TomlDocument& doc);

ExperimentConfig build_experiment(const TomlDocument& doc);

// Runs every seed (fresh rng/oracle/optimizer per seed), recording every
// record_every iterations plus iteration T. A non-finite objective aborts
// that seed with a divergence flag; it is not an error. Deterministic given
// the config.
RunOutcome run_experiment(const ExperimentConfig& cfg);

std::string summary_to_csv(const std::vector<SummaryRow>& rows);

// Grid expansion: a list in any scalar-typed leaf is a grid axis
// (inherently list-valued keys such as seeds, x0, h_diag are not axes).
struct GridAxis {
  std::string table;
  std::size_t table_index;
  std::string key;
  std::vector<TomlValue> values;
};

struct GridExpansion {
  std::vector<GridAxis> axes;
  std::vector<TomlDocument> points;
  std::vector<std::vector<std::size_t>> indices;  // per point, per axis
};

GridExpansion expand_grid(const TomlDocument& doc, std::size_t cap = 4096);

struct GridResult {
  std::vector<SummaryRow> ranked;  // best first
  TomlDocument best_config;
  std::vector<std::string> warnings;  // boundary-winner notices
};

// Runs every grid point and ranks by the metric ("final_loss" or
// "tail_grad"). Diverged runs rank last; ties break toward smaller eta0,
// then lexicographic fingerprint. Warns when the winner sits on a grid edge.
GridResult grid_search(const TomlDocument& doc, const std::string& metric,
                       std::size_t cap = 4096);

struct CompareResult {
  std::string csv;  // label,iter,f_val_mean,grad_norm_sq_mean
  std::string svg;  // one series per optimizer
  std::vector<SummaryRow> summaries;
};

// Overlays several optimizers on one problem/noise/seed setting. Accepts
// one document holding several [[optimizer]] tables, or several documents
// that must agree on [problem], [noise], and [run].
CompareResult compare(const std::vector<TomlDocument>& docs);

// Worker cap for (seed x grid point) parallelism; ADAPTIX_THREADS overrides
// the hardware count. Outputs are merged in a fixed order, so parallel and
// serial runs are byte-identical.
int thread_cap();

}  // namespace adaptix

#endif  // ADAPTIX_EXPERIMENT_HPP_
