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

#include "adaptix/optimizers.hpp"

#include <cassert>
#include <cmath>

#include "adaptix/errors.hpp"

namespace adaptix {

namespace {

void require_dim(const Vector& g, const Vector& x) {
  if (g.size() != x.size()) {
    throw DimensionError("optimizer: gradient length mismatch");
  }
}

void fill_scalar_step(StepStats& stats, double eta) {
  stats.step_min = eta;
  stats.step_mean = eta;
  stats.step_max = eta;
}

void fill_coord_steps(StepStats& stats, const Vector& etas, bool any) {
  if (!any || etas.empty()) {
    stats.step_min = stats.step_mean = stats.step_max = 0.0;
    return;
  }
  double lo = etas[0], hi = etas[0], sum = 0.0;
  for (double e : etas) {
    lo = std::min(lo, e);
    hi = std::max(hi, e);
    sum += e;
  }
  stats.step_min = lo;
  stats.step_max = hi;
  stats.step_mean = sum / static_cast<double>(etas.size());
}

}  // namespace

void Optimizer::step(const std::vector<Vector>& grads) {
  if (static_cast<int>(grads.size()) != grads_per_step()) {
    throw ConfigError("optimizer: expected " + std::to_string(grads_per_step()) +
                      " gradient(s) per step");
  }
  for (const Vector& g : grads) require_dim(g, x_);
  Vector prev = x_;
  do_step(grads);
  if (projection_.kind != ProjectionSet::Kind::None) {
    x_ = project(projection_, x_);
  }
  double linf = 0.0;
  for (std::size_t j = 0; j < x_.size(); ++j) {
    linf = std::max(linf, std::fabs(x_[j] - prev[j]));
  }
  stats_.update_linf = linf;
  ++t_;
}

// ---------------------------------------------------------------------------
// SGD

SgdOptimizer::SgdOptimizer(Vector x0, Schedule sched, double momentum,
                           double weight_decay, bool nesterov)
    : Optimizer(std::move(x0)),
      sched_(sched),
      momentum_(momentum),
      weight_decay_(weight_decay),
      nesterov_(nesterov),
      buf_(x_.size(), 0.0) {
  if (momentum < 0.0 || momentum >= 1.0) {
    throw ConfigError("sgd: momentum must be in [0, 1)");
  }
  if (weight_decay < 0.0) throw ConfigError("sgd: weight_decay must be >= 0");
}

void SgdOptimizer::step_with_eta(const Vector& grad, double eta) {
  require_dim(grad, x_);
  for (std::size_t j = 0; j < x_.size(); ++j) {
    double g_eff = grad[j] + weight_decay_ * x_[j];
    double direction;
    if (momentum_ > 0.0) {
      buf_[j] = momentum_ * buf_[j] + g_eff;
      direction = nesterov_ ? momentum_ * buf_[j] + g_eff : buf_[j];
    } else {
      direction = g_eff;
    }
    x_[j] -= eta * direction;
  }
  fill_scalar_step(stats_, eta);
}

void SgdOptimizer::do_step(const std::vector<Vector>& grads) {
  step_with_eta(grads[0], sched_.eval(t_ + 1));
}

// ---------------------------------------------------------------------------
// SGDOL

SgdolOptimizer::SgdolOptimizer(Vector x0, double alpha, double l)
    : Optimizer(std::move(x0)), alpha_(alpha), l_(l) {
  if (alpha <= 0.0 || l <= 0.0) throw ConfigError("sgdol: need alpha, l > 0");
}

double SgdolOptimizer::current_eta() const {
  return ftrl_eta(s_inner_, s_norm_, alpha_, l_);
}

void SgdolOptimizer::do_step(const std::vector<Vector>& grads) {
  const Vector& g = grads[0];
  const Vector& g_prime = grads[1];
  // The step size depends only on rounds < t.
  double eta = current_eta();
  for (std::size_t j = 0; j < x_.size(); ++j) x_[j] -= eta * g[j];
  s_inner_ += dot(g, g_prime);
  s_norm_ += dot(g, g);
  fill_scalar_step(stats_, eta);
}

SgdolCoordOptimizer::SgdolCoordOptimizer(Vector x0, double alpha, double l)
    : Optimizer(std::move(x0)),
      alpha_(alpha),
      l_(l),
      s_inner_(x_.size(), 0.0),
      s_norm_(x_.size(), 0.0) {
  if (alpha <= 0.0 || l <= 0.0) throw ConfigError("sgdol: need alpha, l > 0");
}

Vector SgdolCoordOptimizer::current_etas() const {
  Vector etas(x_.size());
  for (std::size_t j = 0; j < x_.size(); ++j) {
    etas[j] = ftrl_eta(s_inner_[j], s_norm_[j], alpha_, l_);
  }
  return etas;
}

void SgdolCoordOptimizer::do_step(const std::vector<Vector>& grads) {
  const Vector& g = grads[0];
  const Vector& g_prime = grads[1];
  Vector etas = current_etas();
  for (std::size_t j = 0; j < x_.size(); ++j) {
    x_[j] -= etas[j] * g[j];
    s_inner_[j] += g[j] * g_prime[j];
    s_norm_[j] += g[j] * g[j];
  }
  fill_coord_steps(stats_, etas, true);
}

// ---------------------------------------------------------------------------
// Adam family

AdamFamilyOptimizer::AdamFamilyOptimizer(Vector x0, Decay decay, Schedule sched,
                                         double alpha, double beta1,
                                         double beta2, double eps,
                                         double lambda)
    : Optimizer(std::move(x0)),
      decay_(decay),
      sched_(sched),
      alpha_(alpha),
      beta1_(beta1),
      beta2_(beta2),
      eps_(eps),
      lambda_(lambda),
      m_(x_.size(), 0.0),
      v_(x_.size(), 0.0) {
  if (alpha <= 0.0) throw ConfigError("adam: alpha must be positive");
  if (beta1 < 0.0 || beta1 >= 1.0 || beta2 < 0.0 || beta2 >= 1.0) {
    throw ConfigError("adam: need beta1, beta2 in [0, 1)");
  }
  if (eps < 0.0) throw ConfigError("adam: eps must be >= 0");
  if (lambda < 0.0) throw ConfigError("adam: lambda must be >= 0");
}

void AdamFamilyOptimizer::step_with_eta(const Vector& grad, double eta) {
  require_dim(grad, x_);
  // Own update counter so bias correction advances even when this raw
  // update is driven directly.
  int t = ++updates_;
  double bc1 = 1.0 - std::pow(beta1_, t);
  double bc2 = 1.0 - std::pow(beta2_, t);

  Vector effective_steps(x_.size());
  for (std::size_t j = 0; j < x_.size(); ++j) {
    double g = grad[j];
    if (decay_ == Decay::L2) g += lambda_ * x_[j];
    m_[j] = beta1_ * m_[j] + (1.0 - beta1_) * g;
    v_[j] = beta2_ * v_[j] + (1.0 - beta2_) * g * g;
    double m_hat = m_[j] / bc1;
    double v_hat = v_[j] / bc2;
    double denom = std::sqrt(v_hat) + eps_;
    // v_hat = 0 forces m_hat = 0; the 0/0 update contributes nothing.
    double adaptive = denom > 0.0 ? eta * alpha_ * m_hat / denom : 0.0;
    effective_steps[j] = denom > 0.0 ? eta * alpha_ / denom : 0.0;
    switch (decay_) {
      case Decay::L2:
        x_[j] -= adaptive;
        break;
      case Decay::Decoupled:
        x_[j] = (1.0 - eta * lambda_) * x_[j] - adaptive;
        break;
      case Decay::Proximal:
        x_[j] = (x_[j] - adaptive) / (1.0 + eta * lambda_);
        break;
    }
  }
  fill_coord_steps(stats_, effective_steps, true);
}

void AdamFamilyOptimizer::do_step(const std::vector<Vector>& grads) {
  step_with_eta(grads[0], sched_.eval(t_ + 1));
}

// ---------------------------------------------------------------------------
// Generalized sign method

GSignOptimizer::GSignOptimizer(Vector x0, double eta, double beta1, double beta2)
    : Optimizer(std::move(x0)),
      eta_(eta),
      beta1_(beta1),
      beta2_(beta2),
      m_(x_.size(), 0.0),
      v_(x_.size(), 0.0) {
  if (eta <= 0.0) throw ConfigError("gsign: eta must be positive");
  if (beta1 < 0.0 || beta1 >= 1.0 || beta2 < 0.0 || beta2 >= 1.0) {
    throw ConfigError("gsign: need beta1, beta2 in [0, 1)");
  }
}

void GSignOptimizer::do_step(const std::vector<Vector>& grads) {
  const Vector& g = grads[0];
  double bound = eta_ / std::sqrt(1.0 - beta2_);
  Vector effective_steps(x_.size());
  for (std::size_t j = 0; j < x_.size(); ++j) {
    m_[j] = beta1_ * m_[j] + (1.0 - beta1_) * g[j];
    v_[j] = beta2_ * v_[j] + (1.0 - beta2_) * m_[j] * m_[j];
    double update = v_[j] > 0.0 ? eta_ * m_[j] / std::sqrt(v_[j]) : 0.0;
    assert(std::fabs(update) <= bound * (1.0 + 1e-12));
    (void)bound;
    effective_steps[j] = v_[j] > 0.0 ? eta_ / std::sqrt(v_[j]) : 0.0;
    x_[j] -= update;
  }
  fill_coord_steps(stats_, effective_steps, true);
}

GSignTheoryHparams gsign_theory_hparams(double delta_ub, const Vector& l0,
                                        const Vector& sigma, int T,
                                        double beta2) {
  if (delta_ub <= 0.0) throw ConfigError("gsign hparams: delta_ub must be positive");
  if (T < 1) throw ConfigError("gsign hparams: T must be >= 1");
  double l0_l1 = norm_l1(l0);
  if (l0_l1 <= 0.0) throw ConfigError("gsign hparams: |l0|_1 must be positive");
  double sigma_l1 = norm_l1(sigma);

  double alpha = 1.0;
  double denom = sigma_l1 * std::sqrt(static_cast<double>(T));
  if (denom > 0.0) {
    alpha = std::min(std::sqrt(l0_l1) * std::sqrt(delta_ub) / denom, 1.0);
  }
  double beta1 = 1.0 - alpha;
  double eta = std::sqrt(delta_ub * alpha) /
               (std::sqrt(l0_l1) * std::sqrt(static_cast<double>(T)));

  double rho = 1.0;
  if (beta2 > 0.0) {
    if (beta2 >= beta1 * beta1) {
      throw ConfigError("gsign hparams: beta2 must satisfy beta2 < beta1^2");
    }
    rho = 1.0 - std::sqrt(beta2) / beta1;
  }
  return {eta, beta1, alpha, rho};
}

// ---------------------------------------------------------------------------
// Clipped steps

ClipOptimizer::ClipOptimizer(Vector x0, double eta, double gamma, int nu,
                             double beta1)
    : Optimizer(std::move(x0)),
      eta_(eta),
      gamma_(gamma),
      beta1_(beta1),
      nu_(nu),
      buf_(x_.size(), 0.0) {
  if (eta <= 0.0 || gamma <= 0.0) throw ConfigError("clip: need eta, gamma > 0");
  if (nu != 0 && nu != 1) throw ConfigError("clip: nu must be 0 or 1");
  if (beta1 < 0.0 || beta1 >= 1.0) throw ConfigError("clip: beta1 must be in [0, 1)");
}

void ClipOptimizer::do_step(const std::vector<Vector>& grads) {
  const Vector& g = grads[0];
  const Vector* direction = &g;
  if (nu_ == 1) {
    for (std::size_t j = 0; j < buf_.size(); ++j) {
      buf_[j] = beta1_ * buf_[j] + (1.0 - beta1_) * g[j];
    }
    direction = &buf_;
  }
  double norm = norm_l2(*direction);
  double eta = norm > 0.0 ? std::min(eta_, gamma_ / norm) : 0.0;
  for (std::size_t j = 0; j < x_.size(); ++j) x_[j] -= eta * (*direction)[j];
  fill_scalar_step(stats_, eta);
}

// ---------------------------------------------------------------------------
// Accumulator methods

AdagradGlobalOptimizer::AdagradGlobalOptimizer(Vector x0, double diameter,
                                               ProjectionSet domain)
    : Optimizer(std::move(x0)), diameter_(diameter) {
  if (diameter <= 0.0) throw ConfigError("adagrad_global: diameter must be positive");
  projection_ = std::move(domain);
}

void AdagradGlobalOptimizer::do_step(const std::vector<Vector>& grads) {
  const Vector& g = grads[0];
  q_ += norms(g).l2_sq;
  if (q_ <= 0.0) {
    // Undefined step while no gradient mass has arrived; stay put.
    fill_scalar_step(stats_, 0.0);
    return;
  }
  double eta = diameter_ / std::sqrt(2.0 * q_);
  for (std::size_t j = 0; j < x_.size(); ++j) x_[j] -= eta * g[j];
  fill_scalar_step(stats_, eta);
}

AdagradCoordOptimizer::AdagradCoordOptimizer(Vector x0, double eta,
                                             ProjectionSet hypercube)
    : Optimizer(std::move(x0)), eta_(eta), sq_sum_(x_.size(), 0.0) {
  if (eta <= 0.0) throw ConfigError("adagrad_coord: eta must be positive");
  projection_ = std::move(hypercube);
}

void AdagradCoordOptimizer::do_step(const std::vector<Vector>& grads) {
  const Vector& g = grads[0];
  Vector etas(x_.size(), 0.0);
  bool any = false;
  for (std::size_t j = 0; j < x_.size(); ++j) {
    sq_sum_[j] += g[j] * g[j];
    if (sq_sum_[j] <= 0.0) continue;  // zero-sum coordinates do not move
    etas[j] = eta_ / std::sqrt(sq_sum_[j]);
    x_[j] -= etas[j] * g[j];
    any = true;
  }
  fill_coord_steps(stats_, etas, any);
}

RestartTrace adagrad_restart_run(const Problem& p, const Vector& x0,
                                 double d_inf, double mu, double l,
                                 int rounds) {
  if (rounds < 1) throw ConfigError("adagrad_restart_run: rounds must be >= 1");
  if (d_inf <= 0.0 || mu <= 0.0 || l <= 0.0) {
    throw ConfigError("adagrad_restart_run: need d_inf, mu, l > 0");
  }
  int inner_steps = static_cast<int>(
      std::ceil(32.0 * static_cast<double>(p.dim) * l / mu));

  RestartTrace trace;
  Vector center = x0;
  double halfwidth = d_inf;
  double eta = d_inf / std::sqrt(2.0);
  for (int round = 0; round < rounds; ++round) {
    AdagradCoordOptimizer opt(center, eta,
                              ProjectionSet::hypercube(center, halfwidth));
    Vector mean(center.size(), 0.0);
    for (int t = 0; t < inner_steps; ++t) {
      for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += opt.x()[j];
      opt.step({p.grad(opt.x())});
      ++trace.grad_calls;
    }
    for (double& mj : mean) mj /= static_cast<double>(inner_steps);
    center = mean;
    trace.round_averages.push_back(center);
    halfwidth *= 0.5;
    eta *= 0.5;
  }
  trace.final_x = center;
  return trace;
}

}  // namespace adaptix
