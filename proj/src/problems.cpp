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

#include "adaptix/problems.hpp"

#include <cmath>
#include <memory>

#include "adaptix/errors.hpp"

namespace adaptix {

Vector finite_diff_grad(const Problem& p, const Vector& x, double h) {
  if (h <= 0.0) throw ConfigError("finite_diff_grad: h must be positive");
  Vector g(x.size());
  Vector probe = x;
  for (std::size_t j = 0; j < x.size(); ++j) {
    probe[j] = x[j] + h;
    double up = p.eval(probe);
    probe[j] = x[j] - h;
    double down = p.eval(probe);
    probe[j] = x[j];
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw EvalError("finite_diff_grad: non-finite objective evaluation");
    }
    g[j] = (up - down) / (2.0 * h);
  }
  return g;
}

Problem make_fraction_poly() {
  Problem p;
  p.dim = 1;
  p.eval = [](const Vector& x) {
    double v = x[0];
    return v * v / (1.0 + v * v);
  };
  p.grad = [](const Vector& x) {
    double v = x[0];
    double denom = 1.0 + v * v;
    return Vector{2.0 * v / (denom * denom)};
  };
  p.meta.f_star = 0.0;
  p.meta.minimizer = Vector{0.0};
  p.meta.smooth_l = 2.0;
  return p;
}

Problem make_pl_sin() {
  Problem p;
  p.dim = 1;
  p.eval = [](const Vector& x) {
    double s = std::sin(x[0]);
    return x[0] * x[0] + 3.0 * s * s;
  };
  p.grad = [](const Vector& x) {
    return Vector{2.0 * x[0] + 3.0 * std::sin(2.0 * x[0])};
  };
  p.meta.f_star = 0.0;
  p.meta.minimizer = Vector{0.0};
  p.meta.mu_pl = 0.1;
  p.meta.smooth_l = 8.0;  // sup |F''| = sup |2 + 6 cos(2x)|
  return p;
}

Problem make_quadratic(const Vector& h_diag, const Vector& b, double c) {
  if (h_diag.empty()) throw ConfigError("make_quadratic: empty diagonal");
  if (b.size() != h_diag.size()) {
    throw DimensionError("make_quadratic: h_diag/b length mismatch");
  }
  for (double h : h_diag) {
    if (h <= 0.0) throw ConfigError("make_quadratic: nonpositive diagonal entry");
  }
  auto h_ptr = std::make_shared<Vector>(h_diag);
  auto b_ptr = std::make_shared<Vector>(b);

  Problem p;
  p.dim = static_cast<int>(h_diag.size());
  p.eval = [h_ptr, b_ptr, c](const Vector& x) {
    double acc = c;
    for (std::size_t j = 0; j < x.size(); ++j) {
      acc += 0.5 * (*h_ptr)[j] * x[j] * x[j] + (*b_ptr)[j] * x[j];
    }
    return acc;
  };
  p.grad = [h_ptr, b_ptr](const Vector& x) {
    Vector g(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      g[j] = (*h_ptr)[j] * x[j] + (*b_ptr)[j];
    }
    return g;
  };

  Vector minimizer(h_diag.size());
  double f_star = c;
  double l_max = 0.0;
  for (std::size_t j = 0; j < h_diag.size(); ++j) {
    minimizer[j] = -b[j] / h_diag[j];
    f_star -= 0.5 * b[j] * b[j] / h_diag[j];
    if (h_diag[j] > l_max) l_max = h_diag[j];
  }
  p.meta.minimizer = minimizer;
  p.meta.f_star = f_star;
  p.meta.smooth_l = l_max;
  p.quadratic = QuadraticSpec{h_diag, b, c};
  return p;
}

Problem precondition_quadratic(const Problem& p) {
  if (!p.quadratic) {
    throw ConfigError("precondition_quadratic: not a diagonal quadratic");
  }
  const QuadraticSpec& q = *p.quadratic;
  Vector ones(q.h_diag.size(), 1.0);
  Vector b_tilde(q.b.size());
  for (std::size_t j = 0; j < q.b.size(); ++j) b_tilde[j] = q.b[j] / q.h_diag[j];
  // Constant chosen so the twin keeps the original minimum value.
  double c_tilde = *p.meta.f_star;
  for (double bj : b_tilde) c_tilde += 0.5 * bj * bj;
  return make_quadratic(ones, b_tilde, c_tilde);
}

Problem make_exp_branch(double l0, double l1) {
  if (l0 <= 0.0 || l1 <= 0.0) throw ConfigError("make_exp_branch: need l0, l1 > 0");
  Problem p;
  p.dim = 1;
  double knot = 1.0 / l1;
  p.eval = [l0, l1, knot](const Vector& x) {
    double v = x[0];
    if (v < -knot) return l0 * std::exp(-l1 * v - 1.0) / (l1 * l1);
    if (v > knot) return l0 * std::exp(l1 * v - 1.0) / (l1 * l1);
    return 0.5 * l0 * v * v + 0.5 * l0 / (l1 * l1);
  };
  p.grad = [l0, l1, knot](const Vector& x) {
    double v = x[0];
    if (v < -knot) return Vector{-(l0 / l1) * std::exp(-l1 * v - 1.0)};
    if (v > knot) return Vector{(l0 / l1) * std::exp(l1 * v - 1.0)};
    return Vector{l0 * v};
  };
  p.meta.f_star = 0.5 * l0 / (l1 * l1);
  p.meta.minimizer = Vector{0.0};
  p.meta.l0 = Vector{l0};
  p.meta.l1 = Vector{l1};
  return p;
}

Problem make_quartic_capped(double eps, double l0) {
  if (eps <= 0.0 || l0 <= 0.0) {
    throw ConfigError("make_quartic_capped: need eps, l0 > 0");
  }
  Problem p;
  p.dim = 1;
  double knot = 1.5 * eps / l0;
  double shift = 9.0 * eps * eps / (16.0 * l0);
  p.eval = [eps, l0, knot, shift](const Vector& x) {
    double v = x[0];
    if (v < -knot) return -eps * v;
    if (v > knot) return eps * v;
    double v2 = v * v;
    return 0.5 * l0 * v2 - l0 * l0 * l0 * v2 * v2 / (27.0 * eps * eps) + shift;
  };
  p.grad = [eps, l0, knot](const Vector& x) {
    double v = x[0];
    if (v < -knot) return Vector{-eps};
    if (v > knot) return Vector{eps};
    return Vector{l0 * v - 4.0 * l0 * l0 * l0 * v * v * v / (27.0 * eps * eps)};
  };
  p.meta.f_star = shift;  // middle-branch minimum, at 0
  p.meta.minimizer = Vector{0.0};
  p.meta.l0 = Vector{l0};
  p.meta.l1 = Vector{0.0};
  p.meta.grad_bound_m = Vector{eps};
  return p;
}

Problem make_robust_regression(const Matrix& features, const Vector& labels) {
  if (features.empty()) throw ConfigError("make_robust_regression: no samples");
  if (features.size() != labels.size()) {
    throw DimensionError("make_robust_regression: feature/label count mismatch");
  }
  std::size_t d = features[0].size();
  for (const Vector& row : features) {
    if (row.size() != d) {
      throw DimensionError("make_robust_regression: ragged feature rows");
    }
  }
  auto a = std::make_shared<Matrix>(features);
  auto y = std::make_shared<Vector>(labels);
  int m = static_cast<int>(features.size());

  // phi(t) = t^2 / (1 + t^2), phi'(t) = 2t / (1 + t^2)^2.
  auto phi = [](double t) { return t * t / (1.0 + t * t); };
  auto dphi = [](double t) {
    double denom = 1.0 + t * t;
    return 2.0 * t / (denom * denom);
  };

  Problem p;
  p.dim = static_cast<int>(d);
  p.component_count = m;
  p.eval = [a, y, phi](const Vector& x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a->size(); ++i) {
      acc += phi(dot((*a)[i], x) - (*y)[i]);
    }
    return acc / static_cast<double>(a->size());
  };
  p.component_grad = [a, y, dphi](const Vector& x, int i) {
    const Vector& row = (*a)[static_cast<std::size_t>(i)];
    double coef = dphi(dot(row, x) - (*y)[static_cast<std::size_t>(i)]);
    Vector g(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) g[j] = coef * row[j];
    return g;
  };
  // Sum-then-divide, in index order, so a full-batch minibatch draw
  // reproduces this bitwise.
  p.grad = [a, y, dphi](const Vector& x) {
    Vector g(x.size(), 0.0);
    for (std::size_t i = 0; i < a->size(); ++i) {
      const Vector& row = (*a)[i];
      double coef = dphi(dot(row, x) - (*y)[i]);
      for (std::size_t j = 0; j < row.size(); ++j) g[j] += coef * row[j];
    }
    for (double& gj : g) gj /= static_cast<double>(a->size());
    return g;
  };
  return p;
}

}  // namespace adaptix
