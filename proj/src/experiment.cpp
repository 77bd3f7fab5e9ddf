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

#include "adaptix/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>
#include <thread>

#include "adaptix/datasets.hpp"
#include "adaptix/errors.hpp"

namespace adaptix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double get_double(const TomlTable& t, const std::string& key, double fallback) {
  auto it = t.find(key);
  return it == t.end() ? fallback : it->second.as_double();
}

double require_double(const TomlTable& t, const std::string& key,
                      const std::string& ctx) {
  auto it = t.find(key);
  if (it == t.end()) throw ConfigError(ctx + ": missing required key '" + key + "'");
  return it->second.as_double();
}

int64_t get_int(const TomlTable& t, const std::string& key, int64_t fallback) {
  auto it = t.find(key);
  return it == t.end() ? fallback : it->second.as_int();
}

bool get_bool(const TomlTable& t, const std::string& key, bool fallback) {
  auto it = t.find(key);
  return it == t.end() ? fallback : it->second.as_bool();
}

std::string get_string(const TomlTable& t, const std::string& key,
                       const std::string& fallback) {
  auto it = t.find(key);
  return it == t.end() ? fallback : it->second.as_string();
}

Vector get_vector(const TomlTable& t, const std::string& key) {
  auto it = t.find(key);
  if (it == t.end()) return {};
  return it->second.as_double_array();
}

// Keys whose values are inherently lists; a list there is data, not a grid.
bool is_list_typed(const std::string& table, const std::string& key) {
  static const std::set<std::pair<std::string, std::string>> kListKeys = {
      {"run", "seeds"},         {"run", "x0"},
      {"problem", "h_diag"},    {"problem", "b"},
      {"noise", "sigma_vec"},   {"projection", "center"},
      {"diagnose", "scales"},
  };
  return kListKeys.count({table, key}) > 0;
}

Problem build_problem(const TomlTable& t) {
  std::string kind = get_string(t, "kind", "");
  if (kind == "fraction_poly") return make_fraction_poly();
  if (kind == "pl_sin") return make_pl_sin();
  if (kind == "quadratic") {
    Vector h = get_vector(t, "h_diag");
    if (h.empty()) throw ConfigError("quadratic problem: missing h_diag");
    Vector b = get_vector(t, "b");
    if (b.empty()) b.assign(h.size(), 0.0);
    Problem p = make_quadratic(h, b, get_double(t, "c", 0.0));
    if (get_bool(t, "precondition", false)) p = precondition_quadratic(p);
    return p;
  }
  if (kind == "exp_branch") {
    return make_exp_branch(require_double(t, "l0", "exp_branch"),
                           require_double(t, "l1", "exp_branch"));
  }
  if (kind == "quartic_capped") {
    return make_quartic_capped(require_double(t, "eps", "quartic_capped"),
                               require_double(t, "l0", "quartic_capped"));
  }
  if (kind == "robust_regression") {
    std::string path = get_string(t, "dataset", "");
    if (path.empty()) throw ConfigError("robust_regression: missing dataset path");
    Dataset ds = load_libsvm_file(path);
    double val_fraction = get_double(t, "val_fraction", 0.0);
    if (val_fraction > 0.0) {
      ds = drop_validation_split(
          ds, val_fraction, static_cast<uint64_t>(get_int(t, "split_seed", 0)));
    }
    if (get_bool(t, "balance", true)) {
      Rng rng(static_cast<uint64_t>(get_int(t, "balance_seed", 0)));
      ds = balance_and_bias(ds, rng);
    }
    return make_robust_regression(ds.features, ds.labels);
  }
  if (kind == "synth_regression") {
    Rng rng(static_cast<uint64_t>(get_int(t, "data_seed", 0)));
    Dataset ds = synth_classification(static_cast<int>(get_int(t, "n", 200)),
                                      static_cast<int>(get_int(t, "d", 10)),
                                      get_double(t, "noise", 0.0), rng);
    return make_robust_regression(ds.features, ds.labels);
  }
  throw ConfigError("unknown problem kind '" + kind + "'");
}

NoiseModel build_noise(const TomlDocument& doc) {
  if (!doc.has("noise")) return NoiseModel::none();
  const TomlTable& t = doc.table("noise");
  std::string kind = get_string(t, "kind", "none");
  if (kind == "none") return NoiseModel::none();
  if (kind == "gaussian") return NoiseModel::gaussian(require_double(t, "sigma", "noise"));
  if (kind == "relaxed") {
    return NoiseModel::relaxed(get_double(t, "a", 0.0),
                               require_double(t, "b", "noise"));
  }
  if (kind == "bounded_coord") {
    Vector sv = get_vector(t, "sigma_vec");
    if (sv.empty()) throw ConfigError("bounded_coord noise: missing sigma_vec");
    return NoiseModel::bounded_coord(std::move(sv));
  }
  if (kind == "minibatch") {
    return NoiseModel::minibatch(static_cast<int>(get_int(t, "batch", 1)));
  }
  throw ConfigError("unknown noise kind '" + kind + "'");
}

ProjectionSet build_projection(const TomlDocument& doc, int dim) {
  if (!doc.has("projection")) return ProjectionSet::none();
  const TomlTable& t = doc.table("projection");
  std::string kind = get_string(t, "kind", "");
  Vector center = get_vector(t, "center");
  if (center.empty()) {
    center.assign(static_cast<std::size_t>(dim),
                  get_double(t, "center_fill", 0.0));
  }
  if (static_cast<int>(center.size()) != dim) {
    throw ConfigError("projection: center length does not match the problem");
  }
  if (kind == "hypercube") {
    return ProjectionSet::hypercube(std::move(center),
                                    require_double(t, "halfwidth", "projection"));
  }
  if (kind == "l2_ball") {
    return ProjectionSet::l2_ball(std::move(center),
                                  require_double(t, "radius", "projection"));
  }
  throw ConfigError("unknown projection kind '" + kind + "'");
}

Schedule build_schedule(const TomlTable& t, const Problem& p, int iters,
                        double fallback_eta0) {
  std::string kind = get_string(t, "schedule", "constant");
  double eta0 = get_double(t, "eta0", fallback_eta0);
  if (kind == "constant") return Schedule::constant(eta0);
  if (kind == "inv_t") return Schedule::inv_t(eta0, get_double(t, "alpha", 1.0));
  if (kind == "inv_sqrt_t") {
    return Schedule::inv_sqrt_t(eta0, get_double(t, "alpha", 1.0));
  }
  if (kind == "exponential") {
    return Schedule::exponential(eta0, require_double(t, "alpha", "schedule"));
  }
  if (kind == "exponential_beta") {
    double beta;
    auto it = t.find("beta");
    if (it != t.end()) {
      beta = it->second.as_double();
    } else if (p.meta.smooth_l && p.meta.mu_pl) {
      beta = *p.meta.smooth_l / *p.meta.mu_pl;  // condition-number default
    } else {
      throw ConfigError(
          "exponential_beta schedule: beta not given and the problem carries "
          "no mu/L metadata");
    }
    return Schedule::exponential_beta(eta0, beta, iters);
  }
  if (kind == "cosine") return Schedule::cosine(eta0, iters);
  throw ConfigError("unknown schedule kind '" + kind + "'");
}

struct OptimizerSpec {
  OptimizerFactory factory;
  std::string label;
  double eta0 = 0.0;
};

OptimizerSpec build_optimizer(const TomlTable& t, const Problem& p, int iters,
                              const ProjectionSet& projection) {
  std::string kind = get_string(t, "kind", "");
  OptimizerSpec spec;
  spec.label = get_string(t, "label", kind);
  bool has_projection = projection.kind != ProjectionSet::Kind::None;

  if (kind == "sgd") {
    Schedule sched = build_schedule(t, p, iters, get_double(t, "eta0", 0.0));
    double momentum = get_double(t, "momentum", 0.0);
    double weight_decay = get_double(t, "weight_decay", 0.0);
    bool nesterov = get_bool(t, "nesterov", false);
    spec.eta0 = sched.eta0;
    spec.factory = [=](Vector x0) -> std::unique_ptr<Optimizer> {
      auto opt = std::make_unique<SgdOptimizer>(std::move(x0), sched, momentum,
                                                weight_decay, nesterov);
      if (has_projection) opt->set_projection(projection);
      return opt;
    };
    return spec;
  }

  if (kind == "sgdol" || kind == "sgdol_coord") {
    double l = get_double(t, "l", 10.0);
    double alpha = get_double(t, "alpha", 10.0);
    spec.eta0 = 1.0 / l;
    bool coord = kind == "sgdol_coord";
    spec.factory = [=](Vector x0) -> std::unique_ptr<Optimizer> {
      std::unique_ptr<Optimizer> opt;
      if (coord) {
        opt = std::make_unique<SgdolCoordOptimizer>(std::move(x0), alpha, l);
      } else {
        opt = std::make_unique<SgdolOptimizer>(std::move(x0), alpha, l);
      }
      if (has_projection) opt->set_projection(projection);
      return opt;
    };
    return spec;
  }

  if (kind == "adam_l2" || kind == "adamw" || kind == "adamprox") {
    AdamFamilyOptimizer::Decay decay =
        kind == "adam_l2" ? AdamFamilyOptimizer::Decay::L2
        : kind == "adamw" ? AdamFamilyOptimizer::Decay::Decoupled
                          : AdamFamilyOptimizer::Decay::Proximal;
    double alpha = require_double(t, "alpha", kind);
    double beta1 = get_double(t, "beta1", 0.9);
    double beta2 = get_double(t, "beta2", 0.999);
    double eps = get_double(t, "eps", 1e-8);
    double lambda = get_double(t, "lambda", 0.0);
    Schedule sched = build_schedule(t, p, iters, get_double(t, "eta0", 1.0));
    spec.eta0 = alpha;
    spec.factory = [=](Vector x0) -> std::unique_ptr<Optimizer> {
      auto opt = std::make_unique<AdamFamilyOptimizer>(
          std::move(x0), decay, sched, alpha, beta1, beta2, eps, lambda);
      if (has_projection) opt->set_projection(projection);
      return opt;
    };
    return spec;
  }

  if (kind == "gsign") {
    double eta = require_double(t, "eta", "gsign");
    double beta1 = get_double(t, "beta1", 0.9);
    double beta2 = get_double(t, "beta2", 0.999);
    spec.eta0 = eta;
    spec.factory = [=](Vector x0) -> std::unique_ptr<Optimizer> {
      auto opt = std::make_unique<GSignOptimizer>(std::move(x0), eta, beta1, beta2);
      if (has_projection) opt->set_projection(projection);
      return opt;
    };
    return spec;
  }

  if (kind == "clip") {
    double eta = require_double(t, "eta", "clip");
    double gamma = require_double(t, "gamma", "clip");
    int nu = static_cast<int>(get_int(t, "nu", 0));
    double beta1 = get_double(t, "beta1", 0.9);
    spec.eta0 = eta;
    spec.factory = [=](Vector x0) -> std::unique_ptr<Optimizer> {
      auto opt = std::make_unique<ClipOptimizer>(std::move(x0), eta, gamma, nu, beta1);
      if (has_projection) opt->set_projection(projection);
      return opt;
    };
    return spec;
  }

  if (kind == "adagrad_global") {
    if (!has_projection) {
      throw ConfigError("adagrad_global: a [projection] domain is required");
    }
    double d_bound = get_double(t, "d_bound", 0.0);
    if (d_bound <= 0.0) {
      // l2 diameter of the configured domain.
      if (projection.kind == ProjectionSet::Kind::Hypercube) {
        d_bound = 2.0 * projection.halfwidth *
                  std::sqrt(static_cast<double>(projection.center.size()));
      } else {
        d_bound = 2.0 * projection.radius;
      }
    }
    spec.eta0 = d_bound;
    spec.factory = [=](Vector x0) -> std::unique_ptr<Optimizer> {
      return std::make_unique<AdagradGlobalOptimizer>(std::move(x0), d_bound,
                                                      projection);
    };
    return spec;
  }

  if (kind == "adagrad_coord") {
    double eta = require_double(t, "eta", "adagrad_coord");
    if (has_projection && projection.kind != ProjectionSet::Kind::Hypercube) {
      throw ConfigError("adagrad_coord: projection must be a hypercube");
    }
    spec.eta0 = eta;
    spec.factory = [=](Vector x0) -> std::unique_ptr<Optimizer> {
      return std::make_unique<AdagradCoordOptimizer>(std::move(x0), eta,
                                                     projection);
    };
    return spec;
  }

  throw ConfigError("unknown optimizer kind '" + kind + "'");
}

std::string canonical_section(const std::string& name, const TomlTable& t) {
  std::string out = "[" + name + "]\n";
  for (const auto& [key, value] : t) {
    out += key + "=" + value.render() + "\n";
  }
  return out;
}

std::string canonical_document(const TomlDocument& doc) {
  // Sections sorted by name; repeated names keep file order.
  std::vector<std::pair<std::string, const TomlTable*>> ordered;
  for (const auto& [name, table] : doc.tables) ordered.emplace_back(name, &table);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out;
  for (const auto& [name, table] : ordered) {
    out += canonical_section(name, *table);
  }
  return out;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = UINT64_C(0xcbf29ce484222325);
  for (unsigned char c : s) {
    h ^= c;
    h *= UINT64_C(0x100000001b3);
  }
  return h;
}

std::string params_summary(const TomlDocument& doc) {
  std::string out;
  for (const TomlTable* t : doc.all("optimizer")) {
    for (const auto& [key, value] : *t) {
      if (!out.empty()) out += ';';
      std::string rendered = value.render();
      for (char& c : rendered) {
        if (c == ',') c = ';';
      }
      out += key + "=" + rendered;
    }
  }
  return out;
}

struct SeedOutcome {
  std::vector<TrajectoryRecord> records;
  bool diverged = false;
};

SeedOutcome run_seed(const ExperimentConfig& cfg, int64_t seed) {
  GradOracle oracle(cfg.problem, cfg.noise, Rng(static_cast<uint64_t>(seed)));
  std::unique_ptr<Optimizer> opt = cfg.make_optimizer(cfg.x0);
  SeedOutcome out;

  for (int t = 1; t <= cfg.iters; ++t) {
    std::vector<Vector> grads;
    grads.reserve(static_cast<std::size_t>(opt->grads_per_step()));
    for (int k = 0; k < opt->grads_per_step(); ++k) {
      grads.push_back(oracle.sample_grad(opt->x()));
    }
    opt->step(grads);

    bool at_record = t % cfg.record_every == 0 || t == cfg.iters;
    if (!all_finite(opt->x())) {
      TrajectoryRecord r;
      r.seed = seed;
      r.iter = t;
      r.f_val = kInf;
      r.grad_norm_sq = kInf;
      r.oracle_calls = oracle.calls();
      out.records.push_back(r);
      out.diverged = true;
      break;
    }
    if (!at_record) continue;

    TrajectoryRecord r;
    r.seed = seed;
    r.iter = t;
    double f = cfg.problem.eval(opt->x());
    // The recorded gradient is the clean one; it is not an oracle call.
    Vector g = cfg.problem.grad(opt->x());
    r.f_val = std::isfinite(f) ? f : kInf;
    r.grad_norm_sq = norms(g).l2_sq;
    const StepStats& stats = opt->last_stats();
    r.step_min = stats.step_min;
    r.step_mean = stats.step_mean;
    r.step_max = stats.step_max;
    r.update_linf = stats.update_linf;
    r.oracle_calls = oracle.calls();
    out.records.push_back(r);
    if (!std::isfinite(f)) {
      out.diverged = true;
      break;
    }
  }
  return out;
}

template <typename Fn>
void parallel_for(std::size_t n, Fn fn) {
  if (n == 0) return;
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_cap()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= n) break;
          fn(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
        next.store(n);  // drain remaining work
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

SummaryRow summarize(const ExperimentConfig& cfg,
                     const std::vector<SeedOutcome>& outcomes, double wall_ms) {
  SummaryRow row;
  row.fingerprint = cfg.fingerprint;
  row.params = params_summary(cfg.doc);
  row.wall_ms = wall_ms;

  std::vector<double> finals, tails;
  for (const SeedOutcome& o : outcomes) {
    if (o.diverged) {
      ++row.diverged;
      finals.push_back(kInf);
      tails.push_back(kInf);
      continue;
    }
    finals.push_back(o.records.back().f_val);
    std::vector<double> grads;
    grads.reserve(o.records.size());
    for (const TrajectoryRecord& r : o.records) grads.push_back(r.grad_norm_sq);
    tails.push_back(noise_floor(grads, cfg.tail_frac));
  }

  auto mean_ci = [](const std::vector<double>& v) -> std::pair<double, double> {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    if (!std::isfinite(mean) || v.size() < 2) return {mean, 0.0};
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size() - 1);
    return {mean, 1.96 * std::sqrt(var / static_cast<double>(v.size()))};
  };
  std::tie(row.final_f_mean, row.final_f_ci) = mean_ci(finals);
  std::tie(row.tail_grad_mean, row.tail_grad_ci) = mean_ci(tails);
  return row;
}

}  // namespace

std::string config_fingerprint(const TomlDocument& doc) {
  uint64_t h = fnv1a(canonical_document(doc));
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int thread_cap() {
  if (const char* env = std::getenv("ADAPTIX_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

ExperimentConfig build_experiment(const TomlDocument& doc) {
  ExperimentConfig cfg;
  cfg.doc = doc;
  cfg.fingerprint = config_fingerprint(doc);
  cfg.problem = build_problem(doc.table("problem"));
  cfg.noise = build_noise(doc);

  const TomlTable& run = doc.table("run");
  cfg.iters = static_cast<int>(get_int(run, "iters", 0));
  if (cfg.iters < 1) throw ConfigError("[run] iters must be >= 1");
  auto seeds_it = run.find("seeds");
  if (seeds_it == run.end()) throw ConfigError("[run] seeds is required");
  for (int64_t s : seeds_it->second.as_int_array()) cfg.seeds.push_back(s);
  if (cfg.seeds.empty()) throw ConfigError("[run] seeds must be non-empty");
  cfg.record_every = static_cast<int>(get_int(run, "record_every", 1));
  if (cfg.record_every < 1 || cfg.record_every > cfg.iters) {
    throw ConfigError("[run] record_every must be in [1, iters]");
  }

  cfg.x0 = get_vector(run, "x0");
  if (cfg.x0.empty()) {
    cfg.x0.assign(static_cast<std::size_t>(cfg.problem.dim),
                  get_double(run, "x0_fill", 0.0));
  }
  if (static_cast<int>(cfg.x0.size()) != cfg.problem.dim) {
    throw ConfigError("[run] x0 length does not match the problem dimension");
  }

  ProjectionSet projection = build_projection(doc, cfg.problem.dim);
  auto opts = doc.all("optimizer");
  if (opts.empty()) throw ConfigError("missing config section [optimizer]");
  if (opts.size() > 1) {
    throw ConfigError("multiple [[optimizer]] tables: use the compare command");
  }
  OptimizerSpec spec = build_optimizer(*opts[0], cfg.problem, cfg.iters, projection);
  cfg.make_optimizer = std::move(spec.factory);
  cfg.optimizer_label = spec.label;
  cfg.eta0 = spec.eta0;

  if (doc.has("diagnose")) {
    const TomlTable& diag = doc.table("diagnose");
    cfg.scales = get_vector(diag, "scales");
    cfg.tail_frac = get_double(diag, "tail_frac", 0.1);
    cfg.grid_lo = get_double(diag, "grid_lo", -10.0);
    cfg.grid_hi = get_double(diag, "grid_hi", 10.0);
    cfg.grid_n = static_cast<int>(get_int(diag, "grid_n", 10001));
  }
  if (cfg.scales.empty()) {
    cfg.scales.resize(static_cast<std::size_t>(cfg.problem.dim));
    for (std::size_t j = 0; j < cfg.scales.size(); ++j) {
      cfg.scales[j] = j % 2 == 0 ? 1e3 : 1e-3;
    }
  } else if (static_cast<int>(cfg.scales.size()) != cfg.problem.dim) {
    // Cycle a short scale list over the coordinates.
    Vector full(static_cast<std::size_t>(cfg.problem.dim));
    for (std::size_t j = 0; j < full.size(); ++j) {
      full[j] = cfg.scales[j % cfg.scales.size()];
    }
    cfg.scales = std::move(full);
  }
  if (cfg.tail_frac <= 0.0 || cfg.tail_frac > 1.0) {
    throw ConfigError("[diagnose] tail_frac must be in (0, 1]");
  }
  if (cfg.grid_n < 2 || cfg.grid_hi <= cfg.grid_lo) {
    throw ConfigError("[diagnose] audit grid must have grid_n >= 2 and grid_hi > grid_lo");
  }
  return cfg;
}

RunOutcome run_experiment(const ExperimentConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  std::vector<SeedOutcome> outcomes(cfg.seeds.size());
  parallel_for(cfg.seeds.size(),
               [&](std::size_t i) { outcomes[i] = run_seed(cfg, cfg.seeds[i]); });
  double wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();

  RunOutcome out;
  out.summary = summarize(cfg, outcomes, wall_ms);
  for (const SeedOutcome& o : outcomes) {
    out.records.insert(out.records.end(), o.records.begin(), o.records.end());
  }
  std::sort(out.records.begin(), out.records.end(),
            [](const TrajectoryRecord& a, const TrajectoryRecord& b) {
              return a.seed != b.seed ? a.seed < b.seed : a.iter < b.iter;
            });
  return out;
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "fingerprint,params,final_f_mean,final_f_ci,tail_grad_mean,tail_grad_ci,"
      "diverged\n";
  for (const SummaryRow& r : rows) {
    out += r.fingerprint + ',' + r.params + ',' + format_double(r.final_f_mean) +
           ',' + format_double(r.final_f_ci) + ',' +
           format_double(r.tail_grad_mean) + ',' + format_double(r.tail_grad_ci) +
           ',' + std::to_string(r.diverged) + '\n';
  }
  return out;
}

GridExpansion expand_grid(const TomlDocument& doc, std::size_t cap) {
  GridExpansion expansion;
  for (std::size_t ti = 0; ti < doc.tables.size(); ++ti) {
    const auto& [name, table] = doc.tables[ti];
    for (const auto& [key, value] : table) {
      if (value.kind != TomlValue::Kind::Array) continue;
      if (is_list_typed(name, key)) continue;
      GridAxis axis;
      axis.table = name;
      axis.table_index = ti;
      axis.key = key;
      axis.values = value.array;
      if (axis.values.empty()) {
        throw ConfigError("grid axis " + name + "." + key + " is empty");
      }
      expansion.axes.push_back(std::move(axis));
    }
  }

  std::size_t total = 1;
  for (const GridAxis& axis : expansion.axes) {
    if (axis.values.size() > cap / total) {
      throw ConfigError("grid size exceeds the cap of " + std::to_string(cap));
    }
    total *= axis.values.size();
  }

  std::vector<std::size_t> idx(expansion.axes.size(), 0);
  for (std::size_t point = 0; point < total; ++point) {
    TomlDocument d = doc;
    for (std::size_t a = 0; a < expansion.axes.size(); ++a) {
      const GridAxis& axis = expansion.axes[a];
      d.tables[axis.table_index].second[axis.key] = axis.values[idx[a]];
    }
    expansion.points.push_back(std::move(d));
    expansion.indices.push_back(idx);
    for (std::size_t a = expansion.axes.size(); a-- > 0;) {
      if (++idx[a] < expansion.axes[a].values.size()) break;
      idx[a] = 0;
    }
  }
  return expansion;
}

GridResult grid_search(const TomlDocument& doc, const std::string& metric,
                       std::size_t cap) {
  if (metric != "final_loss" && metric != "tail_grad") {
    throw ConfigError("unknown grid metric '" + metric + "'");
  }
  GridExpansion expansion = expand_grid(doc, cap);

  // Build every config up front so config errors surface deterministically.
  std::vector<ExperimentConfig> cfgs;
  cfgs.reserve(expansion.points.size());
  for (const TomlDocument& point : expansion.points) {
    cfgs.push_back(build_experiment(point));
  }

  // One job per (grid point, seed).
  struct Job {
    std::size_t point;
    std::size_t seed_index;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < cfgs.size(); ++p) {
    for (std::size_t s = 0; s < cfgs[p].seeds.size(); ++s) jobs.push_back({p, s});
  }
  std::vector<std::vector<SeedOutcome>> outcomes(cfgs.size());
  for (std::size_t p = 0; p < cfgs.size(); ++p) {
    outcomes[p].resize(cfgs[p].seeds.size());
  }
  auto start = std::chrono::steady_clock::now();
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    outcomes[job.point][job.seed_index] =
        run_seed(cfgs[job.point], cfgs[job.point].seeds[job.seed_index]);
  });
  double wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();

  std::vector<std::size_t> order(cfgs.size());
  std::vector<SummaryRow> rows(cfgs.size());
  for (std::size_t p = 0; p < cfgs.size(); ++p) {
    order[p] = p;
    rows[p] = summarize(cfgs[p], outcomes[p], wall_ms);
  }

  auto metric_of = [&](const SummaryRow& r) {
    return metric == "final_loss" ? r.final_f_mean : r.tail_grad_mean;
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    bool div_a = rows[a].diverged > 0, div_b = rows[b].diverged > 0;
    if (div_a != div_b) return div_b;  // finite runs first
    double ma = metric_of(rows[a]), mb = metric_of(rows[b]);
    if (ma != mb) return ma < mb;
    if (cfgs[a].eta0 != cfgs[b].eta0) return cfgs[a].eta0 < cfgs[b].eta0;
    return rows[a].fingerprint < rows[b].fingerprint;
  });

  GridResult result;
  for (std::size_t p : order) result.ranked.push_back(rows[p]);
  std::size_t best = order[0];
  result.best_config = expansion.points[best];
  for (std::size_t a = 0; a < expansion.axes.size(); ++a) {
    const GridAxis& axis = expansion.axes[a];
    if (axis.values.size() < 2) continue;
    std::size_t idx = expansion.indices[best][a];
    if (idx == 0 || idx + 1 == axis.values.size()) {
      result.warnings.push_back(
          "best " + axis.table + "." + axis.key + " = " +
          axis.values[idx].render() +
          " lies on the grid boundary; extend the grid");
    }
  }
  return result;
}

CompareResult compare(const std::vector<TomlDocument>& docs) {
  if (docs.empty()) throw ConfigError("compare: no configs given");

  // Normalize to one document per optimizer.
  std::vector<TomlDocument> singles;
  for (const TomlDocument& doc : docs) {
    auto opts = doc.all("optimizer");
    if (opts.empty()) throw ConfigError("compare: missing [optimizer]");
    for (const TomlTable* opt : opts) {
      TomlDocument single;
      for (const auto& [name, table] : doc.tables) {
        if (name != "optimizer") single.tables.emplace_back(name, table);
      }
      single.tables.emplace_back("optimizer", *opt);
      singles.push_back(std::move(single));
    }
  }
  if (singles.size() < 2) {
    throw ConfigError("compare: need at least two optimizers");
  }

  // Shared axes: problem, noise, run, and projection must agree.
  auto shared_key = [](const TomlDocument& d) {
    std::string out;
    for (const char* section : {"problem", "noise", "run", "projection"}) {
      if (d.has(section)) out += canonical_section(section, d.table(section));
    }
    return out;
  };
  std::string reference = shared_key(singles[0]);
  for (const TomlDocument& d : singles) {
    if (shared_key(d) != reference) {
      throw ConfigError("compare: configs disagree on problem/noise/run axes");
    }
  }

  CompareResult result;
  std::string csv = "label,iter,f_val_mean,grad_norm_sq_mean\n";
  std::vector<PlotSeries> series;
  std::set<std::string> used_labels;
  for (std::size_t i = 0; i < singles.size(); ++i) {
    ExperimentConfig cfg = build_experiment(singles[i]);
    std::string label = cfg.optimizer_label;
    while (used_labels.count(label)) label += "'";
    used_labels.insert(label);

    RunOutcome outcome = run_experiment(cfg);
    result.summaries.push_back(outcome.summary);

    // Mean across seeds, aligned on recorded iterations.
    std::map<int64_t, std::pair<double, double>> acc;  // iter -> (sum f, sum g)
    std::map<int64_t, int> counts;
    for (const TrajectoryRecord& r : outcome.records) {
      acc[r.iter].first += r.f_val;
      acc[r.iter].second += r.grad_norm_sq;
      ++counts[r.iter];
    }
    PlotSeries s;
    s.label = label;
    for (const auto& [iter, sums] : acc) {
      // Skip iterations missing from diverged seeds so means stay comparable.
      if (counts[iter] != static_cast<int>(cfg.seeds.size())) continue;
      double f_mean = sums.first / counts[iter];
      double g_mean = sums.second / counts[iter];
      csv += label + ',' + std::to_string(iter) + ',' + format_double(f_mean) +
             ',' + format_double(g_mean) + '\n';
      s.points.emplace_back(static_cast<double>(iter), g_mean);
    }
    series.push_back(std::move(s));
  }

  PlotAxes axes;
  axes.x_label = "iteration";
  axes.y_label = "grad_norm_sq";
  axes.title = "optimizer comparison";
  result.csv = std::move(csv);
  result.svg = emit_svg_lines(series, axes);
  return result;
}

}  // namespace adaptix
