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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adaptix/cli.hpp"
#include "adaptix/datasets.hpp"
#include "adaptix/diagnostics.hpp"
#include "adaptix/errors.hpp"
#include "adaptix/experiment.hpp"
#include "adaptix/oracles.hpp"
#include "adaptix/optimizers.hpp"
#include "adaptix/problems.hpp"
#include "adaptix/rng.hpp"
#include "adaptix/schedules.hpp"
#include "adaptix/svg_plot.hpp"
#include "adaptix/toml_lite.hpp"
#include "adaptix/vector_ops.hpp"

namespace py = pybind11;
using namespace adaptix;

namespace {

Schedule schedule_from_kind(const std::string& kind, double eta0, double alpha,
                            double beta, int horizon) {
  if (kind == "constant") return Schedule::constant(eta0);
  if (kind == "inv_t") return Schedule::inv_t(eta0, alpha);
  if (kind == "inv_sqrt_t") return Schedule::inv_sqrt_t(eta0, alpha);
  if (kind == "exponential") return Schedule::exponential(eta0, alpha);
  if (kind == "exponential_beta") return Schedule::exponential_beta(eta0, beta, horizon);
  if (kind == "cosine") return Schedule::cosine(eta0, horizon);
  throw ConfigError("unknown schedule kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Adaptive stochastic optimization lab (C++ core)";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<ParseError>(m, "ParseError");

  // numerics
  py::class_<Rng>(m, "Rng")
      .def(py::init<uint64_t>(), py::arg("seed"))
      .def("uniform01", &Rng::uniform01)
      .def("gauss", py::overload_cast<>(&Rng::gauss))
      .def("gauss", py::overload_cast<double, double>(&Rng::gauss),
           py::arg("mean"), py::arg("sd"));
  m.def("dot", &dot);
  m.def("norms", [](const Vector& u) {
    Norms n = norms(u);
    return py::make_tuple(n.l1, n.l2_sq, n.linf);
  });
  m.def("finite_diff_grad", &finite_diff_grad, py::arg("problem"), py::arg("x"),
        py::arg("h"));

  // problems
  py::class_<ProblemMeta>(m, "ProblemMeta")
      .def_readonly("f_star", &ProblemMeta::f_star)
      .def_readonly("minimizer", &ProblemMeta::minimizer)
      .def_readonly("mu_pl", &ProblemMeta::mu_pl)
      .def_readonly("smooth_l", &ProblemMeta::smooth_l);
  py::class_<Problem>(m, "Problem")
      .def_readonly("dim", &Problem::dim)
      .def_readonly("component_count", &Problem::component_count)
      .def_readonly("meta", &Problem::meta)
      .def("eval", [](const Problem& p, const Vector& x) { return p.eval(x); })
      .def("grad", [](const Problem& p, const Vector& x) { return p.grad(x); })
      .def("component_grad", [](const Problem& p, const Vector& x, int i) {
        return p.component_grad(x, i);
      });
  m.def("make_fraction_poly", &make_fraction_poly);
  m.def("make_pl_sin", &make_pl_sin);
  m.def("make_quadratic", &make_quadratic, py::arg("h_diag"), py::arg("b"),
        py::arg("c") = 0.0);
  m.def("precondition_quadratic", &precondition_quadratic);
  m.def("make_exp_branch", &make_exp_branch, py::arg("l0"), py::arg("l1"));
  m.def("make_quartic_capped", &make_quartic_capped, py::arg("eps"), py::arg("l0"));
  m.def("make_robust_regression", &make_robust_regression, py::arg("features"),
        py::arg("labels"));

  // datasets
  py::class_<Dataset>(m, "Dataset")
      .def_readonly("features", &Dataset::features)
      .def_readonly("labels", &Dataset::labels);
  m.def("parse_libsvm", &parse_libsvm);
  m.def("serialize_libsvm", &serialize_libsvm);
  m.def("balance_and_bias", [](const Dataset& ds, uint64_t seed) {
    Rng rng(seed);
    return balance_and_bias(ds, rng);
  }, py::arg("dataset"), py::arg("seed") = 0);
  m.def("synth_classification", [](int n, int d, double noise, uint64_t seed) {
    Rng rng(seed);
    return synth_classification(n, d, noise, rng);
  }, py::arg("n"), py::arg("d"), py::arg("noise") = 0.0, py::arg("seed") = 0);

  // oracles
  py::class_<NoiseModel>(m, "NoiseModel")
      .def_static("none", &NoiseModel::none)
      .def_static("gaussian", &NoiseModel::gaussian)
      .def_static("relaxed", &NoiseModel::relaxed, py::arg("a"), py::arg("b"))
      .def_static("bounded_coord", &NoiseModel::bounded_coord)
      .def_static("minibatch", &NoiseModel::minibatch);
  py::class_<GradOracle>(m, "GradOracle")
      .def(py::init([](const Problem& p, const NoiseModel& noise, uint64_t seed) {
             return GradOracle(p, noise, Rng(seed));
           }),
           py::arg("problem"), py::arg("noise"), py::arg("seed"),
           py::keep_alive<1, 2>())
      .def("sample_grad", &GradOracle::sample_grad)
      .def("sample_two_grads", &GradOracle::sample_two_grads)
      .def("variance_audit", [](GradOracle& o, const Vector& x, int n) {
        VarianceAudit a = o.variance_audit(x, n);
        return py::make_tuple(a.mean_err_linf, a.var_est);
      })
      .def_property_readonly("calls", &GradOracle::calls);

  // schedules and projections
  m.def("schedule_eval",
        [](const std::string& kind, double eta0, int t, double alpha,
           double beta, int horizon) {
          return schedule_from_kind(kind, eta0, alpha, beta, horizon).eval(t);
        },
        py::arg("kind"), py::arg("eta0"), py::arg("t"), py::arg("alpha") = 0.5,
        py::arg("beta") = 0.0, py::arg("horizon") = 0);
  m.def("ftrl_eta", &ftrl_eta, py::arg("s_inner"), py::arg("s_norm"),
        py::arg("alpha"), py::arg("l"));
  m.def("project_hypercube", [](const Vector& center, double halfwidth,
                                const Vector& x) {
    return project(ProjectionSet::hypercube(center, halfwidth), x);
  });
  m.def("project_l2_ball", [](const Vector& center, double radius,
                              const Vector& x) {
    return project(ProjectionSet::l2_ball(center, radius), x);
  });

  // optimizers
  py::class_<StepStats>(m, "StepStats")
      .def_readonly("step_min", &StepStats::step_min)
      .def_readonly("step_mean", &StepStats::step_mean)
      .def_readonly("step_max", &StepStats::step_max)
      .def_readonly("update_linf", &StepStats::update_linf);
  py::class_<Optimizer>(m, "Optimizer")
      .def("step", &Optimizer::step)
      .def("grads_per_step", &Optimizer::grads_per_step)
      .def_property_readonly("x", [](const Optimizer& o) { return o.x(); })
      .def_property_readonly("t", &Optimizer::t)
      .def_property_readonly("last_stats", &Optimizer::last_stats);
  py::class_<SgdOptimizer, Optimizer>(m, "SgdOptimizer")
      .def(py::init([](Vector x0, const std::string& schedule, double eta0,
                       double alpha, double beta, int horizon, double momentum,
                       double weight_decay, bool nesterov) {
             return SgdOptimizer(std::move(x0),
                                 schedule_from_kind(schedule, eta0, alpha, beta, horizon),
                                 momentum, weight_decay, nesterov);
           }),
           py::arg("x0"), py::arg("schedule") = "constant", py::arg("eta0") = 0.1,
           py::arg("alpha") = 0.5, py::arg("beta") = 0.0, py::arg("horizon") = 0,
           py::arg("momentum") = 0.0, py::arg("weight_decay") = 0.0,
           py::arg("nesterov") = false);
  py::class_<SgdolOptimizer, Optimizer>(m, "SgdolOptimizer")
      .def(py::init<Vector, double, double>(), py::arg("x0"), py::arg("alpha"),
           py::arg("l"))
      .def_property_readonly("current_eta", &SgdolOptimizer::current_eta);
  py::class_<SgdolCoordOptimizer, Optimizer>(m, "SgdolCoordOptimizer")
      .def(py::init<Vector, double, double>(), py::arg("x0"), py::arg("alpha"),
           py::arg("l"))
      .def_property_readonly("current_etas", &SgdolCoordOptimizer::current_etas);
  py::class_<AdamFamilyOptimizer, Optimizer>(m, "AdamFamilyOptimizer")
      .def(py::init([](Vector x0, const std::string& decay, double alpha,
                       double beta1, double beta2, double eps, double lambda,
                       const std::string& schedule, double eta0, int horizon) {
             AdamFamilyOptimizer::Decay d =
                 decay == "l2"        ? AdamFamilyOptimizer::Decay::L2
                 : decay == "decoupled" ? AdamFamilyOptimizer::Decay::Decoupled
                 : decay == "proximal"  ? AdamFamilyOptimizer::Decay::Proximal
                                        : throw ConfigError("unknown decay '" + decay + "'");
             return AdamFamilyOptimizer(std::move(x0), d,
                                        schedule_from_kind(schedule, eta0, 0.5, 0.0, horizon),
                                        alpha, beta1, beta2, eps, lambda);
           }),
           py::arg("x0"), py::arg("decay") = "decoupled", py::arg("alpha") = 0.001,
           py::arg("beta1") = 0.9, py::arg("beta2") = 0.999, py::arg("eps") = 1e-8,
           py::arg("lambda_") = 0.0, py::arg("schedule") = "constant",
           py::arg("eta0") = 1.0, py::arg("horizon") = 0);
  py::class_<GSignOptimizer, Optimizer>(m, "GSignOptimizer")
      .def(py::init<Vector, double, double, double>(), py::arg("x0"),
           py::arg("eta"), py::arg("beta1") = 0.9, py::arg("beta2") = 0.999);
  py::class_<ClipOptimizer, Optimizer>(m, "ClipOptimizer")
      .def(py::init<Vector, double, double, int, double>(), py::arg("x0"),
           py::arg("eta"), py::arg("gamma"), py::arg("nu") = 0,
           py::arg("beta1") = 0.9);
  py::class_<AdagradGlobalOptimizer, Optimizer>(m, "AdagradGlobalOptimizer")
      .def(py::init([](Vector x0, double diameter, const Vector& center,
                       double halfwidth) {
             return AdagradGlobalOptimizer(
                 std::move(x0), diameter,
                 ProjectionSet::hypercube(center, halfwidth));
           }),
           py::arg("x0"), py::arg("diameter"), py::arg("center"),
           py::arg("halfwidth"));
  py::class_<AdagradCoordOptimizer, Optimizer>(m, "AdagradCoordOptimizer")
      .def(py::init([](Vector x0, double eta, const Vector& center,
                       double halfwidth) {
             ProjectionSet cube = center.empty()
                                      ? ProjectionSet::none()
                                      : ProjectionSet::hypercube(center, halfwidth);
             return AdagradCoordOptimizer(std::move(x0), eta, cube);
           }),
           py::arg("x0"), py::arg("eta"), py::arg("center") = Vector{},
           py::arg("halfwidth") = 1.0);
  m.def("gsign_theory_hparams",
        [](double delta_ub, const Vector& l0, const Vector& sigma, int T,
           double beta2) {
          GSignTheoryHparams h = gsign_theory_hparams(delta_ub, l0, sigma, T, beta2);
          return py::make_tuple(h.eta, h.beta1, h.alpha, h.rho);
        },
        py::arg("delta_ub"), py::arg("l0"), py::arg("sigma"), py::arg("T"),
        py::arg("beta2"));
  m.def("adagrad_restart_run",
        [](const Problem& p, const Vector& x0, double d_inf, double mu, double l,
           int rounds) {
          RestartTrace t = adagrad_restart_run(p, x0, d_inf, mu, l, rounds);
          return py::make_tuple(t.final_x, t.round_averages, t.grad_calls);
        },
        py::arg("problem"), py::arg("x0"), py::arg("d_inf"), py::arg("mu"),
        py::arg("l"), py::arg("rounds"));

  // diagnostics
  m.def("estimate_smoothness_along", &estimate_smoothness_along);
  m.def("coord_l0l1_scatter", [](const Problem& p, const std::vector<Vector>& traj) {
    std::vector<py::tuple> out;
    for (const CoordL0L1Point& pt : coord_l0l1_scatter(p, traj)) {
      out.push_back(py::make_tuple(pt.j, pt.g_min, pt.ratio));
    }
    return out;
  });
  m.def("pl_audit", &pl_audit);
  m.def("update_histogram", [](const std::vector<double>& updates) {
    Histogram h = update_histogram(updates);
    return py::make_tuple(h.bin_edges, h.counts, h.total);
  });
  m.def("noise_floor", &noise_floor, py::arg("traj_grad_norm_sq"),
        py::arg("tail_frac"));

  // harness
  m.def("run_experiment_toml", [](const std::string& toml_text) {
    ExperimentConfig cfg = build_experiment(parse_toml(toml_text));
    RunOutcome outcome = run_experiment(cfg);
    return py::make_tuple(trajectory_to_csv(outcome.records),
                          summary_to_csv({outcome.summary}));
  });
  m.def("cli_main", &cli_main);
}
