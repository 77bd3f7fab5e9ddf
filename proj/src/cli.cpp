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

#include "adaptix/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <limits>
#include <map>

#include "adaptix/csv_io.hpp"
#include "adaptix/errors.hpp"
#include "adaptix/experiment.hpp"
#include "adaptix/svg_plot.hpp"

namespace adaptix {

namespace {

namespace fs = std::filesystem;

std::string out_path(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

struct TrajectoryCapture {
  std::vector<Vector> iterates;            // x_0 .. x_T
  std::vector<double> update_magnitudes;   // per-coordinate |dx| of every step
};

// One seeded run retaining every iterate; used by the diagnostics commands.
TrajectoryCapture capture_trajectory(const ExperimentConfig& cfg, int64_t seed) {
  GradOracle oracle(cfg.problem, cfg.noise, Rng(static_cast<uint64_t>(seed)));
  std::unique_ptr<Optimizer> opt = cfg.make_optimizer(cfg.x0);
  TrajectoryCapture cap;
  cap.iterates.push_back(opt->x());
  for (int t = 1; t <= cfg.iters; ++t) {
    std::vector<Vector> grads;
    for (int k = 0; k < opt->grads_per_step(); ++k) {
      grads.push_back(oracle.sample_grad(opt->x()));
    }
    Vector prev = opt->x();
    opt->step(grads);
    if (!all_finite(opt->x())) break;
    for (std::size_t j = 0; j < prev.size(); ++j) {
      cap.update_magnitudes.push_back(std::abs(opt->x()[j] - prev[j]));
    }
    cap.iterates.push_back(opt->x());
  }
  return cap;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  ExperimentConfig cfg = build_experiment(load_toml_file(config_path));
  RunOutcome outcome = run_experiment(cfg);
  write_text_file(out_path(out_dir, "trajectory.csv"),
                  trajectory_to_csv(outcome.records));
  write_text_file(out_path(out_dir, "summary.csv"),
                  summary_to_csv({outcome.summary}));
  std::cout << "run " << cfg.fingerprint << ": final_f_mean="
            << format_double(outcome.summary.final_f_mean)
            << " tail_grad_mean=" << format_double(outcome.summary.tail_grad_mean)
            << " diverged=" << outcome.summary.diverged << " wall_ms="
            << format_double(outcome.summary.wall_ms) << "\n";
  return 0;
}

int cmd_grid(const std::string& config_path, const std::string& metric,
             const std::string& out_dir) {
  GridResult result = grid_search(load_toml_file(config_path), metric);
  write_text_file(out_path(out_dir, "grid_summary.csv"),
                  summary_to_csv(result.ranked));
  write_text_file(out_path(out_dir, "best_config.toml"),
                  serialize_toml(result.best_config));
  if (!result.warnings.empty()) {
    std::string text;
    for (const std::string& w : result.warnings) text += w + "\n";
    write_text_file(out_path(out_dir, "warnings.txt"), text);
    for (const std::string& w : result.warnings) {
      std::cout << "warning: " << w << "\n";
    }
  }
  std::cout << "grid: " << result.ranked.size() << " points, best "
            << result.ranked.front().fingerprint << "\n";
  return 0;
}

int cmd_compare(const std::vector<std::string>& config_paths,
                const std::string& out_dir) {
  std::vector<TomlDocument> docs;
  for (const std::string& path : config_paths) docs.push_back(load_toml_file(path));
  CompareResult result = compare(docs);
  write_text_file(out_path(out_dir, "compare.csv"), result.csv);
  write_text_file(out_path(out_dir, "compare.svg"), result.svg);
  write_text_file(out_path(out_dir, "summary.csv"),
                  summary_to_csv(result.summaries));
  std::cout << "compare: " << result.summaries.size() << " optimizers\n";
  return 0;
}

int cmd_diagnose(const std::string& what, const std::string& config_path,
                 const std::string& out_dir) {
  ExperimentConfig cfg = build_experiment(load_toml_file(config_path));

  if (what == "smoothness") {
    TrajectoryCapture cap = capture_trajectory(cfg, cfg.seeds.front());
    // Thin to the recorded cadence so segments are meaningfully long.
    std::vector<Vector> thinned;
    for (std::size_t i = 0; i < cap.iterates.size();
         i += static_cast<std::size_t>(cfg.record_every)) {
      thinned.push_back(cap.iterates[i]);
    }
    auto samples = smoothness_along_trajectory(cfg.problem, thinned);
    std::string csv = "t,l_hat,grad_norm\n";
    double max_l = 0.0;
    for (const SmoothnessSample& s : samples) {
      csv += std::to_string(s.t) + ',' + format_double(s.l_hat) + ',' +
             format_double(s.grad_norm) + '\n';
      max_l = std::max(max_l, s.l_hat);
    }
    write_text_file(out_path(out_dir, "smoothness.csv"), csv);
    std::cout << "smoothness: " << samples.size() << " segments, max l_hat="
              << format_double(max_l) << "\n";
    return 0;
  }

  if (what == "l0l1") {
    TrajectoryCapture cap = capture_trajectory(cfg, cfg.seeds.front());
    auto points = coord_l0l1_scatter(cfg.problem, cap.iterates);
    std::string csv = "j,g_min,ratio\n";
    for (const CoordL0L1Point& pt : points) {
      csv += std::to_string(pt.j) + ',' + format_double(pt.g_min) + ',' +
             format_double(pt.ratio) + '\n';
    }
    write_text_file(out_path(out_dir, "l0l1_scatter.csv"), csv);
    auto [l0_fit, l1_fit] = fit_l0l1(points);
    std::cout << "l0l1: " << points.size() << " points, l0_fit="
              << format_double(l0_fit) << " l1_fit=" << format_double(l1_fit)
              << "\n";
    return 0;
  }

  if (what == "pl") {
    std::vector<Vector> xs;
    if (cfg.problem.dim == 1) {
      double step = (cfg.grid_hi - cfg.grid_lo) /
                    static_cast<double>(cfg.grid_n - 1);
      for (int i = 0; i < cfg.grid_n; ++i) {
        xs.push_back({cfg.grid_lo + step * static_cast<double>(i)});
      }
    } else {
      TrajectoryCapture cap = capture_trajectory(cfg, cfg.seeds.front());
      xs = cap.iterates;
    }
    double min_ratio = pl_audit(cfg.problem, xs);
    std::string csv = "index,f_gap,ratio\n";
    double f_star = *cfg.problem.meta.f_star;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double gap = cfg.problem.eval(xs[i]) - f_star;
      if (gap <= 1e-12) continue;
      double ratio = 0.5 * norms(cfg.problem.grad(xs[i])).l2_sq / (gap + 1e-300);
      csv += std::to_string(i) + ',' + format_double(gap) + ',' +
             format_double(ratio) + '\n';
    }
    write_text_file(out_path(out_dir, "pl_audit.csv"), csv);
    std::cout << "pl: min_ratio=" << format_double(min_ratio) << "\n";
    return 0;
  }

  if (what == "scalefree") {
    double max_dev =
        scale_free_audit(cfg.make_optimizer, cfg.problem, cfg.noise, cfg.x0,
                         cfg.scales, cfg.iters, static_cast<uint64_t>(cfg.seeds.front()));
    std::string csv = "j,scale,max_dev\n";
    for (std::size_t j = 0; j < cfg.scales.size(); ++j) {
      csv += std::to_string(j) + ',' + format_double(cfg.scales[j]) + ',' +
             format_double(max_dev) + '\n';
    }
    write_text_file(out_path(out_dir, "audit.csv"), csv);
    std::cout << "scalefree: max_dev=" << format_double(max_dev) << "\n";
    return 0;
  }

  if (what == "histogram") {
    TrajectoryCapture cap = capture_trajectory(cfg, cfg.seeds.front());
    Histogram h = update_histogram(cap.update_magnitudes);
    std::string csv = "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      double lo = b == 0 ? 0.0 : h.bin_edges[b - 1];
      double hi = b + 1 == h.counts.size()
                      ? std::numeric_limits<double>::infinity()
                      : h.bin_edges[b];
      csv += format_double(lo) + ',' + format_double(hi) + ',' +
             std::to_string(h.counts[b]) + '\n';
    }
    write_text_file(out_path(out_dir, "histogram.csv"), csv);
    std::cout << "histogram: " << h.total << " updates\n";
    return 0;
  }

  throw ConfigError("unknown diagnostic '" + what + "'");
}

int cmd_plot(const std::string& csv_path, const std::string& x_col,
             const std::string& y_col, bool log_x, bool log_y,
             const std::string& out_file) {
  CsvTable table = parse_csv(read_text_file(csv_path));
  int xi = table.column_index(x_col);
  int yi = table.column_index(y_col);
  if (xi < 0) throw ConfigError("plot: no column named '" + x_col + "'");
  if (yi < 0) throw ConfigError("plot: no column named '" + y_col + "'");

  // Series grouping: a label column when present, else per-seed, else one.
  int group = table.column_index("label");
  if (group < 0) group = table.column_index("seed");

  std::map<std::string, PlotSeries> by_key;
  std::vector<std::string> key_order;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::string key =
        group >= 0 ? table.rows[r][static_cast<std::size_t>(group)] : y_col;
    if (!by_key.count(key)) {
      by_key[key].label = key;
      key_order.push_back(key);
    }
    by_key[key].points.emplace_back(table.number_at(r, xi),
                                    table.number_at(r, yi));
  }
  std::vector<PlotSeries> series;
  for (const std::string& key : key_order) series.push_back(by_key[key]);

  PlotAxes axes;
  axes.x_label = x_col;
  axes.y_label = y_col;
  axes.title = fs::path(csv_path).filename().string();
  axes.log_x = log_x;
  axes.log_y = log_y;

  std::string svg = emit_svg_lines(series, axes);
  fs::path out(out_file);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_text_file(out_file, svg);
  std::cout << "plot: wrote " << out_file << "\n";
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"adaptix: adaptive stochastic optimization lab"};
  app.require_subcommand(1);

  std::string config_path, out_dir, metric = "final_loss";
  std::vector<std::string> compare_configs;
  std::string diag_what;
  std::string csv_path, x_col, y_col, out_file;
  bool log_x = false, log_y = false;

  CLI::App* run = app.add_subcommand("run", "run one experiment config");
  run->add_option("--config", config_path, "TOML config")->required();
  run->add_option("--out", out_dir, "output directory")->required();

  CLI::App* grid = app.add_subcommand("grid", "grid-search over list-valued keys");
  grid->add_option("--config", config_path, "TOML config")->required();
  grid->add_option("--metric", metric, "final_loss|tail_grad");
  grid->add_option("--out", out_dir, "output directory")->required();

  CLI::App* cmp = app.add_subcommand("compare", "overlay optimizers on one problem");
  cmp->add_option("--config", compare_configs, "TOML config(s)")->required();
  cmp->add_option("--out", out_dir, "output directory")->required();

  CLI::App* diag = app.add_subcommand("diagnose", "measurement procedures");
  diag->add_option("what", diag_what, "smoothness|l0l1|pl|scalefree|histogram")
      ->required();
  diag->add_option("--config", config_path, "TOML config")->required();
  diag->add_option("--out", out_dir, "output directory")->required();

  CLI::App* plot = app.add_subcommand("plot", "render a CSV as an SVG line plot");
  plot->add_option("--csv", csv_path, "input CSV")->required();
  plot->add_option("--x", x_col, "x column name")->required();
  plot->add_option("--y", y_col, "y column name")->required();
  plot->add_flag("--logx", log_x, "logarithmic x axis");
  plot->add_flag("--logy", log_y, "logarithmic y axis");
  plot->add_option("--out", out_file, "output SVG path")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return 0;
    }
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 1;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir);
    if (grid->parsed()) return cmd_grid(config_path, metric, out_dir);
    if (cmp->parsed()) return cmd_compare(compare_configs, out_dir);
    if (diag->parsed()) return cmd_diagnose(diag_what, config_path, out_dir);
    if (plot->parsed()) return cmd_plot(csv_path, x_col, y_col, log_x, log_y, out_file);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const DimensionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace adaptix
