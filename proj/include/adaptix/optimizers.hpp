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

#ifndef ADAPTIX_OPTIMIZERS_HPP_
#define ADAPTIX_OPTIMIZERS_HPP_

#include <memory>
#include <vector>

#include "adaptix/problems.hpp"
#include "adaptix/schedules.hpp"
#include "adaptix/vector_ops.hpp"

namespace adaptix {

// Per-step telemetry: the per-coordinate step sizes collapsed to
// min/mean/max, and the sup-norm of the applied update. Scalar-step methods
// report the same value in all three slots.
struct StepStats {
  double step_min = 0.0;
  double step_mean = 0.0;
  double step_max = 0.0;
  double update_linf = 0.0;
};

// Uniform step-driven state machine. Each step consumes exactly
// grads_per_step() stochastic gradients, supplied by the caller; the
// optimizer itself never touches the oracle. Single-owner mutable state.
class Optimizer {
 public:
  virtual ~Optimizer() = default;

  virtual int grads_per_step() const { return 1; }

  // Advances one iterate. `grads` holds grads_per_step() vectors drawn at
  // the current iterate. The update is followed by the projection, when one
  // is set; update_linf measures the projected displacement.
  void step(const std::vector<Vector>& grads);

  // Constrains the iterates to a feasible set. The accumulator optimizers
  // install their own domain; for the others this turns on projected
  // updates.
  void set_projection(ProjectionSet p) { projection_ = std::move(p); }

  const Vector& x() const { return x_; }
  int t() const { return t_; }  // completed steps
  const StepStats& last_stats() const { return stats_; }

 protected:
  explicit Optimizer(Vector x0) : x_(std::move(x0)) {}
  virtual void do_step(const std::vector<Vector>& grads) = 0;

  Vector x_;
  int t_ = 0;
  StepStats stats_;
  ProjectionSet projection_;
};

// SGD with optional momentum, weight decay, Nesterov lookahead, and a step
// size schedule. With decay lambda the effective gradient is g + lambda*x;
// the momentum buffer is b <- mu*b + g_eff (no dampening) and the direction
// is b, or mu*b + g_eff when Nesterov.
class SgdOptimizer : public Optimizer {
 public:
  SgdOptimizer(Vector x0, Schedule sched, double momentum = 0.0,
               double weight_decay = 0.0, bool nesterov = false);

  // One update with an explicit step size.
  void step_with_eta(const Vector& grad, double eta);

 protected:
  void do_step(const std::vector<Vector>& grads) override;

 private:
  Schedule sched_;
  double momentum_;
  double weight_decay_;
  bool nesterov_;
  Vector buf_;
};

// Step-size learning on surrogate losses: eta_t is the closed-form
// regularized-leader minimizer over rounds < t, then x <- x - eta_t * g.
// Needs two independent gradient draws per step; only the first moves the
// iterate, both feed the running sums.
class SgdolOptimizer : public Optimizer {
 public:
  SgdolOptimizer(Vector x0, double alpha, double l);

  int grads_per_step() const override { return 2; }
  double current_eta() const;

 protected:
  void do_step(const std::vector<Vector>& grads) override;

 private:
  double alpha_;
  double l_;
  double s_inner_ = 0.0;
  double s_norm_ = 0.0;
};

// Per-coordinate variant: independent sums and step sizes per coordinate.
class SgdolCoordOptimizer : public Optimizer {
 public:
  SgdolCoordOptimizer(Vector x0, double alpha, double l);

  int grads_per_step() const override { return 2; }
  Vector current_etas() const;

 protected:
  void do_step(const std::vector<Vector>& grads) override;

 private:
  double alpha_;
  double l_;
  Vector s_inner_;
  Vector s_norm_;
};

// The adaptive moment family with three ways of applying the weight decay
// lambda:
//   L2        decay folded into the gradient: g <- grad + lambda*x
//   Decoupled x <- (1 - eta_t*lambda)*x - eta_t*alpha*mhat/(sqrt(vhat)+eps)
//   Proximal  x <- (x - eta_t*alpha*mhat/(sqrt(vhat)+eps)) / (1 + eta_t*lambda)
// All three coincide when lambda = 0. Bias-corrected moments; 0/0 updates
// contribute 0.
class AdamFamilyOptimizer : public Optimizer {
 public:
  enum class Decay { L2, Decoupled, Proximal };

  AdamFamilyOptimizer(Vector x0, Decay decay, Schedule sched, double alpha,
                      double beta1, double beta2, double eps, double lambda);

  // One raw update with an explicit eta_t; advances the moment buffers and
  // the bias-correction counter.
  void step_with_eta(const Vector& grad, double eta);

 protected:
  void do_step(const std::vector<Vector>& grads) override;

 private:
  Decay decay_;
  Schedule sched_;
  double alpha_, beta1_, beta2_, eps_, lambda_;
  Vector m_, v_;
  int updates_ = 0;
};

// Sign-style momentum method: m <- b1*m + (1-b1)*g, v <- b2*v + (1-b2)*m^2,
// x_j <- x_j - eta * m_j / sqrt(v_j) with 0/0 := 0. Every coordinate update
// is bounded by eta / sqrt(1 - b2) with no explicit clipping; b2 = 0 gives
// sign updates of size eta.
class GSignOptimizer : public Optimizer {
 public:
  GSignOptimizer(Vector x0, double eta, double beta1, double beta2);

 protected:
  void do_step(const std::vector<Vector>& grads) override;

 private:
  double eta_, beta1_, beta2_;
  Vector m_, v_;
};

struct GSignTheoryHparams {
  double eta;
  double beta1;
  double alpha;
  double rho;
};

// Theory-prescribed hyperparameters from an upper bound Delta on the initial
// suboptimality, the relaxed-smoothness offsets l0, the per-coordinate noise
// bounds sigma, and the horizon T:
//   alpha = min(sqrt(|l0|_1 * Delta) / (|sigma|_1 * sqrt(T)), 1)
//   beta1 = 1 - alpha,  eta = sqrt(Delta * alpha) / sqrt(|l0|_1 * T)
// Requires beta2 < beta1^2 when beta2 > 0 (beta2 = 0 is always accepted,
// with rho = 1).
GSignTheoryHparams gsign_theory_hparams(double delta_ub, const Vector& l0,
                                        const Vector& sigma, int T,
                                        double beta2);

// Clipped step: direction d = g (nu = 0) or the momentum buffer
// b1*b + (1-b1)*g (nu = 1); x <- x - min(eta, gamma/|d|_2) * d. A zero
// direction does not move. Global l2 clipping: the displacement never
// exceeds gamma.
class ClipOptimizer : public Optimizer {
 public:
  ClipOptimizer(Vector x0, double eta, double gamma, int nu,
                double beta1 = 0.9);

 protected:
  void do_step(const std::vector<Vector>& grads) override;

 private:
  double eta_, gamma_, beta1_;
  int nu_;
  Vector buf_;
};

// Global-step-size accumulator over a bounded domain of diameter D:
// Q <- Q + |g|^2, eta_t = D / sqrt(2Q), projected update. Frozen while
// Q = 0.
class AdagradGlobalOptimizer : public Optimizer {
 public:
  AdagradGlobalOptimizer(Vector x0, double diameter, ProjectionSet domain);

 protected:
  void do_step(const std::vector<Vector>& grads) override;

 private:
  double diameter_;
  double q_ = 0.0;
};

// Per-coordinate accumulator with hypercube projection:
// eta_{t,j} = eta / sqrt(sum_{i<=t} g_{i,j}^2); zero-sum coordinates do not
// move.
class AdagradCoordOptimizer : public Optimizer {
 public:
  AdagradCoordOptimizer(Vector x0, double eta, ProjectionSet hypercube);

 protected:
  void do_step(const std::vector<Vector>& grads) override;

 private:
  double eta_;
  Vector sq_sum_;
};

struct RestartTrace {
  Vector final_x;
  std::vector<Vector> round_averages;  // x-bar after each round
  long long grad_calls = 0;
};

// Restarted per-coordinate accumulator for mu-strongly-convex, L-smooth
// problems with |x0 - x*|_inf <= d_inf: round i runs the per-coordinate
// method for T = ceil(32 d L / mu) steps inside the hypercube of halfwidth
// d_inf / 2^(i-1) around the previous round's average, with
// eta = (d_inf / sqrt(2)) / 2^(i-1), then recenters on the new average.
RestartTrace adagrad_restart_run(const Problem& p, const Vector& x0,
                                 double d_inf, double mu, double l,
                                 int rounds);

}  // namespace adaptix

#endif  // ADAPTIX_OPTIMIZERS_HPP_
