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
#include "adaptix/rng.hpp"
#include "adaptix/schedules.hpp"

using namespace adaptix;

TEST_CASE("cosine schedule") {
  Schedule s = Schedule::cosine(1.0, 4);
  CHECK(s.eval(4) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s.eval(2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(s.eval(5), ConfigError);
  CHECK_THROWS_AS(s.eval(0), ConfigError);
  CHECK_THROWS_AS(Schedule::cosine(1.0, 0), ConfigError);
}

TEST_CASE("exponential schedules") {
  Schedule beta = Schedule::exponential_beta(1.0, 2.0, 100);
  CHECK(beta.effective_alpha() == doctest::Approx(0.96163).epsilon(1e-5));
  // alpha^T == beta / T by construction.
  CHECK(std::pow(beta.effective_alpha(), 100) ==
        doctest::Approx(2.0 / 100.0).epsilon(1e-12));

  Schedule plain = Schedule::exponential(0.5, 0.9);
  CHECK(plain.eval(1) == doctest::Approx(0.45));
  CHECK(plain.eval(2) == doctest::Approx(0.405));
  CHECK_THROWS_AS(Schedule::exponential(0.5, 1.0), ConfigError);
  CHECK_THROWS_AS(Schedule::exponential(0.5, 0.0), ConfigError);
}

TEST_CASE("scheduled values are non-increasing where promised") {
  Schedule exp_s = Schedule::exponential_beta(0.125, 80.0, 500);
  Schedule cos_s = Schedule::cosine(0.125, 500);
  for (int t = 1; t < 500; ++t) {
    REQUIRE(exp_s.eval(t + 1) <= exp_s.eval(t));
    REQUIRE(cos_s.eval(t + 1) <= cos_s.eval(t));
    REQUIRE(exp_s.eval(t) >= 0.0);
    REQUIRE(cos_s.eval(t) >= 0.0);
  }
}

TEST_CASE("cosine schedule sums telescope") {
  for (int T : {1, 2, 3, 7, 50, 200}) {
    double cos_sum = 0.0;
    for (int t = 1; t <= T; ++t) {
      cos_sum += std::cos(t * 3.14159265358979323846 / T);
    }
    CHECK(std::fabs(cos_sum + 1.0) <= 1e-9);

    double eta0 = 0.3;
    Schedule s = Schedule::cosine(eta0, T);
    double eta_sum = 0.0;
    for (int t = 1; t <= T; ++t) eta_sum += s.eval(t);
    CHECK(eta_sum == doctest::Approx(eta0 * (T - 1) / 2.0).epsilon(1e-9));
  }
}

TEST_CASE("closed-form step size") {
  CHECK(ftrl_eta(0.0, 0.0, 5.0, 2.0) == doctest::Approx(0.5));  // 1/L
  CHECK(ftrl_eta(5.0, 20.0, 10.0, 10.0) == doctest::Approx(0.05));
  CHECK(ftrl_eta(-20.0, 4.0, 10.0, 2.0) == 0.0);  // negative sum clamps
  CHECK(ftrl_eta(1e9, 1.0, 1.0, 2.0) == doctest::Approx(1.0));  // 2/L cap
  CHECK_THROWS_AS(ftrl_eta(0.0, 0.0, 0.0, 1.0), ConfigError);
}

TEST_CASE("closed form matches a numeric minimizer of the regularized sums") {
  // r(eta) = L*alpha/2 (eta - 1/L)^2 plus the accumulated surrogate losses,
  // minimized over [0, 2/L] on a grid with parabolic refinement.
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    double alpha = rng.uniform(0.1, 100.0);
    double l = rng.uniform(0.5, 50.0);
    int steps = 1 + static_cast<int>(rng.below(20));
    double s_inner = 0.0, s_norm = 0.0;
    for (int i = 0; i < steps; ++i) {
      double g = rng.gauss(0.0, 2.0), gp = rng.gauss(0.0, 2.0);
      s_inner += g * gp;
      s_norm += g * g;
    }

    auto objective = [&](double eta) {
      return 0.5 * l * alpha * (eta - 1.0 / l) * (eta - 1.0 / l) -
             eta * s_inner + 0.5 * l * eta * eta * s_norm;
    };
    const int grid_n = 20001;
    double hi = 2.0 / l, step = hi / (grid_n - 1);
    int best = 0;
    double best_val = objective(0.0);
    for (int i = 1; i < grid_n; ++i) {
      double v = objective(i * step);
      if (v < best_val) {
        best_val = v;
        best = i;
      }
    }
    double arg = best * step;
    if (best > 0 && best < grid_n - 1) {
      // Parabolic refinement, exact for a quadratic objective.
      double y0 = objective((best - 1) * step), y1 = best_val,
             y2 = objective((best + 1) * step);
      double denom = y0 - 2 * y1 + y2;
      if (denom > 0) arg += 0.5 * step * (y0 - y2) / denom;
    }
    CHECK(std::fabs(ftrl_eta(s_inner, s_norm, alpha, l) - arg) <= 1e-6);
  }
}

TEST_CASE("projections") {
  Vector x{0.5, -0.5};
  CHECK(project(ProjectionSet::none(), x) == x);

  ProjectionSet cube = ProjectionSet::hypercube({0, 0}, 1.0);
  Vector clamped = project(cube, {2.0, -0.5});
  CHECK(clamped[0] == 1.0);
  CHECK(clamped[1] == -0.5);
  CHECK(project(cube, x) == x);  // interior point unchanged

  ProjectionSet ball = ProjectionSet::l2_ball({0, 0}, 1.0);
  Vector scaled = project(ball, {3.0, 4.0});
  CHECK(scaled[0] == doctest::Approx(0.6));
  CHECK(scaled[1] == doctest::Approx(0.8));

  CHECK_THROWS_AS(ProjectionSet::hypercube({0}, 0.0), ConfigError);
  CHECK_THROWS_AS(ProjectionSet::l2_ball({0}, -1.0), ConfigError);
}

TEST_CASE("projection is idempotent and non-expansive") {
  Rng rng(22);
  ProjectionSet sets[] = {ProjectionSet::hypercube({0.5, -1.0, 0.0}, 0.8),
                          ProjectionSet::l2_ball({0.5, -1.0, 0.0}, 1.3)};
  for (const ProjectionSet& set : sets) {
    for (int trial = 0; trial < 200; ++trial) {
      Vector a{rng.gauss(0, 2), rng.gauss(0, 2), rng.gauss(0, 2)};
      Vector b{rng.gauss(0, 2), rng.gauss(0, 2), rng.gauss(0, 2)};
      Vector pa = project(set, a), pb = project(set, b);
      Vector ppa = project(set, pa);
      for (std::size_t j = 0; j < 3; ++j) {
        REQUIRE(ppa[j] == doctest::Approx(pa[j]).epsilon(1e-14));
      }
      double before = 0.0, after = 0.0;
      for (std::size_t j = 0; j < 3; ++j) {
        before += (a[j] - b[j]) * (a[j] - b[j]);
        after += (pa[j] - pb[j]) * (pa[j] - pb[j]);
      }
      REQUIRE(after <= before * (1 + 1e-12));
    }
  }
}
