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

#include <doctest.h>

#include <cmath>

#include "adaptix/errors.hpp"
#include "adaptix/oracles.hpp"
#include "adaptix/optimizers.hpp"
#include "adaptix/problems.hpp"

using namespace adaptix;

TEST_CASE("plain sgd step") {
  SgdOptimizer opt({1.0}, Schedule::constant(0.5));
  opt.step({{{2.0}}});
  CHECK(opt.x()[0] == 0.0);
  CHECK(opt.t() == 1);
  CHECK(opt.last_stats().step_mean == 0.5);
  CHECK(opt.last_stats().update_linf == 1.0);
}

TEST_CASE("momentum buffer recursion") {
  // Two equal unit gradients: second direction is mu*1 + 1 = 1.9.
  SgdOptimizer opt({0.0}, Schedule::constant(1.0), 0.9);
  opt.step({{{1.0}}});
  CHECK(opt.x()[0] == doctest::Approx(-1.0));
  opt.step({{{1.0}}});
  CHECK(opt.x()[0] == doctest::Approx(-1.0 - 1.9));

  // Nesterov lookahead uses mu*b + g after the buffer update.
  SgdOptimizer nest({0.0}, Schedule::constant(1.0), 0.9, 0.0, true);
  nest.step({{{1.0}}});
  CHECK(nest.x()[0] == doctest::Approx(-1.9));
}

TEST_CASE("weight decay alone shrinks the iterate") {
  SgdOptimizer opt({1.0}, Schedule::constant(1.0), 0.0, 0.1);
  opt.step({{{0.0}}});
  CHECK(opt.x()[0] == doctest::Approx(0.9));
}

TEST_CASE("gradient count contract") {
  SgdOptimizer sgd({0.0}, Schedule::constant(0.1));
  CHECK(sgd.grads_per_step() == 1);
  CHECK_THROWS_AS(sgd.step({{{1.0}}, {{1.0}}}), ConfigError);

  SgdolOptimizer ol({0.0}, 10.0, 10.0);
  CHECK(ol.grads_per_step() == 2);
  CHECK_THROWS_AS(ol.step({{{1.0}}}), ConfigError);
}

TEST_CASE("step-size learner starts at 1/L and tracks the noiseless optimum") {
  Problem p = make_fraction_poly();
  double l = 2.0;
  SgdolOptimizer opt({1.0}, 10.0, l);
  CHECK(opt.current_eta() == doctest::Approx(1.0 / l));

  double prev_f = p.eval(opt.x());
  for (int t = 0; t < 100; ++t) {
    Vector g = p.grad(opt.x());
    double eta_before = opt.current_eta();
    // Noiseless: the two sums stay equal, so eta pins to exactly 1/L.
    CHECK(eta_before == doctest::Approx(1.0 / l).epsilon(1e-12));
    opt.step({g, g});
    double f = p.eval(opt.x());
    REQUIRE(f <= prev_f + 1e-15);
    prev_f = f;
  }
}

TEST_CASE("per-coordinate learner reduces to the scalar one in 1-d") {
  Problem p = make_fraction_poly();
  SgdolOptimizer scalar({0.8}, 10.0, 2.0);
  SgdolCoordOptimizer coord({0.8}, 10.0, 2.0);
  for (int t = 0; t < 50; ++t) {
    Vector gs = p.grad(scalar.x());
    Vector gc = p.grad(coord.x());
    scalar.step({gs, gs});
    coord.step({gc, gc});
    REQUIRE(scalar.x()[0] == doctest::Approx(coord.x()[0]).epsilon(1e-14));
  }
}

TEST_CASE("a silent coordinate keeps its step at 1/L and never moves") {
  // Gradients only ever touch coordinate 0.
  SgdolCoordOptimizer opt({1.0, 2.0}, 10.0, 4.0);
  for (int t = 0; t < 20; ++t) {
    opt.step({{{0.3, 0.0}}, {{0.25, 0.0}}});
  }
  CHECK(opt.x()[1] == 2.0);
  CHECK(opt.current_etas()[1] == doctest::Approx(0.25));  // 1/L
}

TEST_CASE("per-coordinate steps adapt to anisotropic noise") {
  // Separable quadratic, noise only on coordinate 1: the clean coordinate
  // should keep a larger step size in the tail.
  Problem q = make_quadratic({1, 1}, {0, 0}, 0.0);
  GradOracle oracle(q, NoiseModel::bounded_coord({0.0, 1.0}), Rng(42));
  SgdolCoordOptimizer opt({1.0, 1.0}, 10.0, 2.0);
  const int T = 3000;
  double tail0 = 0.0, tail1 = 0.0;
  int tail_len = 0;
  for (int t = 0; t < T; ++t) {
    auto [g, gp] = oracle.sample_two_grads(opt.x());
    opt.step({g, gp});
    if (t >= T - 300) {
      Vector etas = opt.current_etas();
      tail0 += etas[0];
      tail1 += etas[1];
      ++tail_len;
    }
  }
  CHECK(tail0 / tail_len > tail1 / tail_len);
}

TEST_CASE("adaptive moment family") {
  Schedule unit = Schedule::constant(1.0);

  SUBCASE("first-step magnitude is exactly the step size") {
    AdamFamilyOptimizer opt({0.7}, AdamFamilyOptimizer::Decay::Decoupled, unit,
                            0.05, 0.9, 0.999, 0.0, 0.0);
    opt.step({{{0.3}}});
    CHECK(std::fabs(0.7 - opt.x()[0]) == doctest::Approx(0.05).epsilon(1e-12));
  }

  SUBCASE("the three decay modes coincide when lambda = 0") {
    Problem q = make_quadratic({2, 5}, {1, -1}, 0.0);
    AdamFamilyOptimizer l2({1.0, -1.0}, AdamFamilyOptimizer::Decay::L2, unit,
                           0.01, 0.9, 0.999, 1e-8, 0.0);
    AdamFamilyOptimizer dec({1.0, -1.0}, AdamFamilyOptimizer::Decay::Decoupled,
                            unit, 0.01, 0.9, 0.999, 1e-8, 0.0);
    AdamFamilyOptimizer prox({1.0, -1.0}, AdamFamilyOptimizer::Decay::Proximal,
                             unit, 0.01, 0.9, 0.999, 1e-8, 0.0);
    for (int t = 0; t < 100; ++t) {
      l2.step({q.grad(l2.x())});
      dec.step({q.grad(dec.x())});
      prox.step({q.grad(prox.x())});
      for (std::size_t j = 0; j < 2; ++j) {
        REQUIRE(l2.x()[j] == dec.x()[j]);
        REQUIRE(l2.x()[j] == prox.x()[j]);
      }
    }
  }

  SUBCASE("decoupled and proximal decay agree to first order") {
    // Zero gradient isolates the decay factor: (1 - 0.01) vs 1/(1 + 0.01).
    AdamFamilyOptimizer dec({1.0}, AdamFamilyOptimizer::Decay::Decoupled, unit,
                            0.1, 0.9, 0.999, 1e-8, 0.01);
    AdamFamilyOptimizer prox({1.0}, AdamFamilyOptimizer::Decay::Proximal, unit,
                             0.1, 0.9, 0.999, 1e-8, 0.01);
    dec.step({{{0.0}}});
    prox.step({{{0.0}}});
    CHECK(std::fabs(dec.x()[0] - prox.x()[0]) ==
          doctest::Approx(9.900990099e-5).epsilon(1e-6));
  }

  SUBCASE("zero gradients with eps = 0 keep the iterate finite") {
    AdamFamilyOptimizer opt({1.0}, AdamFamilyOptimizer::Decay::L2, unit, 0.1,
                            0.9, 0.999, 0.0, 0.0);
    opt.step({{{0.0}}});
    CHECK(opt.x()[0] == 1.0);  // 0/0 contributes nothing
  }

  CHECK_THROWS_AS(AdamFamilyOptimizer({0.0}, AdamFamilyOptimizer::Decay::L2,
                                      unit, 0.1, 1.0, 0.999, 1e-8, 0.0),
                  ConfigError);
}

TEST_CASE("sign-style updates") {
  SUBCASE("beta2 = 0 reduces to signed steps") {
    GSignOptimizer opt({0.0}, 0.05, 0.9, 0.0);
    opt.step({{{2.0}}});
    CHECK(opt.x()[0] == doctest::Approx(-0.05).epsilon(1e-15));
    opt.step({{{-5.0}}});
    // m = 0.9*0.2 + 0.1*(-5) < 0, so the sign flips.
    CHECK(opt.x()[0] == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("updates are bounded by eta/sqrt(1-beta2) without clipping") {
    double eta = 0.1, beta2 = 0.99;
    double bound = eta / std::sqrt(1.0 - beta2);
    GSignOptimizer opt({5.0, -3.0}, eta, 0.9, beta2);
    Rng rng(77);
    Vector prev = opt.x();
    for (int t = 0; t < 2000; ++t) {
      // Adversarially scaled gradients.
      double scale = std::pow(10.0, rng.uniform(-6, 6));
      opt.step({{{scale * rng.gauss(), scale * rng.gauss()}}});
      for (std::size_t j = 0; j < 2; ++j) {
        REQUIRE(std::fabs(opt.x()[j] - prev[j]) <= bound * (1 + 1e-12));
      }
      prev = opt.x();
    }
  }

  SUBCASE("zero gradients never move when the buffers start at zero") {
    GSignOptimizer opt({1.0, 2.0}, 0.1, 0.9, 0.999);
    for (int t = 0; t < 10; ++t) opt.step({{{0.0, 0.0}}});
    CHECK(opt.x()[0] == 1.0);
    CHECK(opt.x()[1] == 2.0);
  }
}

TEST_CASE("theory-prescribed sign-method hyperparameters") {
  SUBCASE("zero noise clamps alpha at 1") {
    GSignTheoryHparams h = gsign_theory_hparams(2.0, {1, 1}, {0, 0}, 100, 0.0);
    CHECK(h.alpha == 1.0);
    CHECK(h.beta1 == 0.0);
    CHECK(h.eta == doctest::Approx(std::sqrt(2.0) / (std::sqrt(2.0) * 10.0)));
    CHECK(h.rho == 1.0);
  }

  SUBCASE("plug-in arithmetic") {
    // |l0|_1 = 4, |sigma|_1 = 2, Delta = 1, T = 400.
    GSignTheoryHparams h =
        gsign_theory_hparams(1.0, {3, 1}, {1.5, 0.5}, 400, 0.0);
    CHECK(h.alpha == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(h.beta1 == doctest::Approx(0.95).epsilon(1e-12));
    CHECK(h.eta == doctest::Approx(0.005590169943749474).epsilon(1e-9));
  }

  SUBCASE("rho for beta2 = beta1^2/2") {
    GSignTheoryHparams h0 = gsign_theory_hparams(1.0, {3, 1}, {1.5, 0.5}, 400, 0.0);
    double beta2 = h0.beta1 * h0.beta1 / 2.0;
    GSignTheoryHparams h = gsign_theory_hparams(1.0, {3, 1}, {1.5, 0.5}, 400, beta2);
    CHECK(h.rho == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-12));
  }

  SUBCASE("beta2 at or above beta1^2 is rejected") {
    GSignTheoryHparams h0 = gsign_theory_hparams(1.0, {3, 1}, {1.5, 0.5}, 400, 0.0);
    CHECK_THROWS_AS(gsign_theory_hparams(1.0, {3, 1}, {1.5, 0.5}, 400,
                                         h0.beta1 * h0.beta1),
                    ConfigError);
  }
}

TEST_CASE("clipped steps") {
  SUBCASE("small directions take the plain step") {
    ClipOptimizer opt({0.0, 0.0}, 0.1, 100.0, 0);
    opt.step({{{3.0, 4.0}}});
    CHECK(opt.x()[0] == doctest::Approx(-0.3));
    CHECK(opt.x()[1] == doctest::Approx(-0.4));
  }

  SUBCASE("huge directions move by exactly gamma") {
    ClipOptimizer opt({0.0, 0.0}, 10.0, 1.0, 0);
    opt.step({{{3e6, 4e6}}});
    double moved = std::sqrt(opt.x()[0] * opt.x()[0] + opt.x()[1] * opt.x()[1]);
    CHECK(moved == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("worked clip") {
    ClipOptimizer opt({0.0, 0.0}, 10.0, 1.0, 0);
    opt.step({{{3.0, 4.0}}});
    CHECK(opt.x()[0] == doctest::Approx(-0.6));
    CHECK(opt.x()[1] == doctest::Approx(-0.8));
  }

  SUBCASE("momentum variant uses the buffer direction") {
    ClipOptimizer opt({0.0}, 1.0, 100.0, 1, 0.9);
    opt.step({{{1.0}}});
    CHECK(opt.x()[0] == doctest::Approx(-0.1));  // (1-beta1) * g
  }

  SUBCASE("zero direction does not move") {
    ClipOptimizer opt({1.0}, 1.0, 1.0, 0);
    opt.step({{{0.0}}});
    CHECK(opt.x()[0] == 1.0);
  }

  SUBCASE("the displacement never exceeds gamma") {
    ClipOptimizer opt({0.0, 0.0}, 0.5, 0.3, 1, 0.9);
    Rng rng(12);
    Vector prev = opt.x();
    for (int t = 0; t < 500; ++t) {
      double scale = std::pow(10.0, rng.uniform(-3, 5));
      opt.step({{{scale * rng.gauss(), scale * rng.gauss()}}});
      double dx0 = opt.x()[0] - prev[0], dx1 = opt.x()[1] - prev[1];
      REQUIRE(std::sqrt(dx0 * dx0 + dx1 * dx1) <= 0.3 * (1 + 1e-12));
      prev = opt.x();
    }
  }
}

TEST_CASE("global accumulator steps") {
  ProjectionSet box = ProjectionSet::hypercube({0.0, 0.0}, 10.0);
  double d = std::sqrt(2.0);
  AdagradGlobalOptimizer opt({1.0, 1.0}, d, box);

  // First unit-norm gradient: eta = D / sqrt(2).
  opt.step({{{1.0, 0.0}}});
  CHECK(opt.last_stats().step_mean == doctest::Approx(1.0));
  opt.step({{{1.0, 0.0}}});
  CHECK(opt.last_stats().step_mean == doctest::Approx(d / 2.0));

  AdagradGlobalOptimizer frozen({0.5, 0.5}, 1.0, box);
  for (int t = 0; t < 5; ++t) frozen.step({{{0.0, 0.0}}});
  CHECK(frozen.x()[0] == 0.5);
  CHECK(frozen.x()[1] == 0.5);
}

TEST_CASE("per-coordinate accumulator steps") {
  AdagradCoordOptimizer opt({0.0, 0.0, 5.0}, 0.1, ProjectionSet::none());
  opt.step({{{4.0, -0.25, 0.0}}});
  // First step moves each active coordinate by exactly eta * sign(g).
  CHECK(opt.x()[0] == doctest::Approx(-0.1));
  CHECK(opt.x()[1] == doctest::Approx(0.1));
  CHECK(opt.x()[2] == 5.0);

  // Constant unit gradient: the step size decays as eta / sqrt(t).
  AdagradCoordOptimizer decay({0.0}, 0.5, ProjectionSet::none());
  for (int t = 1; t <= 16; ++t) {
    decay.step({{{1.0}}});
    CHECK(decay.last_stats().step_mean ==
          doctest::Approx(0.5 / std::sqrt(static_cast<double>(t))));
  }

  // Hypercube projection clamps each coordinate independently.
  AdagradCoordOptimizer boxed({0.9, -0.9}, 5.0,
                              ProjectionSet::hypercube({0.0, 0.0}, 1.0));
  boxed.step({{{-1.0, 1.0}}});
  CHECK(boxed.x()[0] == 1.0);
  CHECK(boxed.x()[1] == -1.0);
}

TEST_CASE("projected sgd stays inside the feasible set") {
  SgdOptimizer opt({0.0, 0.0}, Schedule::constant(1.0));
  opt.set_projection(ProjectionSet::l2_ball({0.0, 0.0}, 0.5));
  opt.step({{{-3.0, -4.0}}});
  CHECK(norms(opt.x()).l2_sq == doctest::Approx(0.25));
  CHECK(opt.x()[0] == doctest::Approx(0.3));
  CHECK(opt.x()[1] == doctest::Approx(0.4));
}

TEST_CASE("restarted accumulator runs") {
  Problem q = make_quadratic({1, 4}, {0, 0}, 0.0);
  CHECK_THROWS_AS(adagrad_restart_run(q, {0.5, -0.5}, 1.0, 1.0, 4.0, 0),
                  ConfigError);
  RestartTrace trace = adagrad_restart_run(q, {0.5, -0.5}, 1.0, 1.0, 4.0, 2);
  CHECK(trace.round_averages.size() == 2);
  // T = ceil(32 * d * L / mu) gradient calls per round.
  CHECK(trace.grad_calls == 2 * 256);
  CHECK(norm_linf(trace.final_x) < 0.5);
}
