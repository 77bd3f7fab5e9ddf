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
#include "adaptix/problems.hpp"
#include "adaptix/rng.hpp"
#include "adaptix/vector_ops.hpp"

using namespace adaptix;

TEST_CASE("dot products") {
  CHECK(dot({1, 0}, {0, 1}) == 0.0);
  CHECK(dot({1, 2}, {1, 2}) == 5.0);
  // 0.3*2 + (-0.4)*1 = 0.2
  CHECK(dot({0.3, -0.4}, {2, 1}) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK_THROWS_AS(dot({1, 2}, {1}), DimensionError);
}

TEST_CASE("dot is symmetric and bilinear on random triples") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Vector u(5), v(5), w(5);
    for (int j = 0; j < 5; ++j) {
      u[j] = rng.gauss();
      v[j] = rng.gauss();
      w[j] = rng.gauss();
    }
    double a = rng.uniform(-2.0, 2.0);
    CHECK(dot(u, v) == doctest::Approx(dot(v, u)).epsilon(1e-12));
    Vector av_plus_w(5);
    for (int j = 0; j < 5; ++j) av_plus_w[j] = a * v[j] + w[j];
    CHECK(dot(u, av_plus_w) ==
          doctest::Approx(a * dot(u, v) + dot(u, w)).epsilon(1e-12));
  }
}

TEST_CASE("norms") {
  Norms z = norms({0, 0});
  CHECK(z.l1 == 0.0);
  CHECK(z.l2_sq == 0.0);
  CHECK(z.linf == 0.0);

  Norms n = norms({3, -4});
  CHECK(n.l1 == 7.0);
  CHECK(n.l2_sq == 25.0);
  CHECK(n.linf == 4.0);

  Norms ones = norms({1, 1, 1, 1});
  CHECK(ones.l1 == 4.0);
  CHECK(ones.l2_sq == 4.0);
  CHECK(ones.linf == 1.0);
}

TEST_CASE("norm chain linf <= l2 <= l1 <= sqrt(d) l2 on random vectors") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t d = 1 + rng.below(8);
    Vector u(d);
    for (double& x : u) x = rng.gauss(0.0, 3.0);
    Norms n = norms(u);
    double l2 = std::sqrt(n.l2_sq);
    CHECK(n.linf <= l2 * (1 + 1e-12));
    CHECK(l2 <= n.l1 * (1 + 1e-12));
    CHECK(n.l1 <= std::sqrt(static_cast<double>(d)) * l2 * (1 + 1e-12));
  }
}

TEST_CASE("central differences") {
  Problem half_square = make_quadratic({1.0}, {0.0}, 0.0);
  Vector g = finite_diff_grad(half_square, {3.0}, 1e-5);
  CHECK(g[0] == doctest::Approx(3.0).epsilon(1e-8));

  Problem frac = make_fraction_poly();
  Vector g2 = finite_diff_grad(frac, {1.0}, 1e-5);
  CHECK(g2[0] == doctest::Approx(0.5).epsilon(1e-8));  // 2x/(1+x^2)^2 at 1

  Problem constant;
  constant.dim = 3;
  constant.eval = [](const Vector&) { return 42.0; };
  constant.grad = [](const Vector& x) { return Vector(x.size(), 0.0); };
  Vector g3 = finite_diff_grad(constant, {1.0, -2.0, 0.5}, 1e-5);
  for (double v : g3) CHECK(v == 0.0);

  Problem bad;
  bad.dim = 1;
  bad.eval = [](const Vector& x) { return std::log(x[0]); };
  bad.grad = [](const Vector&) { return Vector{0.0}; };
  CHECK_THROWS_AS(finite_diff_grad(bad, {0.0}, 1e-3), EvalError);
  CHECK_THROWS_AS(finite_diff_grad(half_square, {1.0}, 0.0), ConfigError);
}

TEST_CASE("gaussian draws") {
  Rng degenerate(1);
  CHECK(degenerate.gauss(7.0, 0.0) == 7.0);

  Rng a(42), b(42);
  CHECK(a.gauss() == b.gauss());
  CHECK(a.gauss() == b.gauss());

  Rng r(123);
  double sum = 0.0, sum_sq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    double z = r.gauss();
    sum += z;
    sum_sq += z * z;
  }
  double mean = sum / n;
  double var = sum_sq / n - mean * mean;
  CHECK(std::fabs(mean) < 0.02);
  CHECK(std::fabs(var - 1.0) < 0.05);
}

TEST_CASE("one Box-Muller transform consumes exactly two uniforms") {
  // Two gaussian draws use one transform; the stream then sits two raw
  // values ahead.
  Rng used(9001);
  used.gauss();
  used.gauss();
  Rng fresh(9001);
  fresh.next_u64();
  fresh.next_u64();
  CHECK(used.next_u64() == fresh.next_u64());
}

TEST_CASE("equal seeds give identical streams") {
  Rng a(555), b(555);
  for (int i = 0; i < 10000; ++i) {
    REQUIRE(a.next_u64() == b.next_u64());
  }
  Rng c(555), d(556);
  bool differ = false;
  for (int i = 0; i < 4; ++i) differ = differ || c.next_u64() != d.next_u64();
  CHECK(differ);
}

TEST_CASE("uniform01 stays in (0, 1]") {
  Rng r(77);
  for (int i = 0; i < 10000; ++i) {
    double u = r.uniform01();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}
