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

#include "adaptix/schedules.hpp"

#include <algorithm>
#include <cmath>

#include "adaptix/errors.hpp"

namespace adaptix {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Schedule Schedule::constant(double eta0) {
  if (eta0 <= 0.0) throw ConfigError("schedule: eta0 must be positive");
  Schedule s;
  s.kind = Kind::Constant;
  s.eta0 = eta0;
  return s;
}

Schedule Schedule::inv_t(double eta0, double alpha) {
  if (eta0 <= 0.0) throw ConfigError("schedule: eta0 must be positive");
  if (alpha < 0.0) throw ConfigError("schedule: alpha must be >= 0");
  Schedule s;
  s.kind = Kind::InvT;
  s.eta0 = eta0;
  s.alpha = alpha;
  return s;
}

Schedule Schedule::inv_sqrt_t(double eta0, double alpha) {
  Schedule s = inv_t(eta0, alpha);
  s.kind = Kind::InvSqrtT;
  return s;
}

Schedule Schedule::exponential(double eta0, double alpha) {
  if (eta0 <= 0.0) throw ConfigError("schedule: eta0 must be positive");
  if (alpha <= 0.0 || alpha >= 1.0) {
    throw ConfigError("exponential schedule: need 0 < alpha < 1");
  }
  Schedule s;
  s.kind = Kind::Exponential;
  s.eta0 = eta0;
  s.alpha = alpha;
  return s;
}

Schedule Schedule::exponential_beta(double eta0, double beta, int horizon) {
  if (eta0 <= 0.0) throw ConfigError("schedule: eta0 must be positive");
  if (beta <= 0.0) throw ConfigError("exponential_beta schedule: beta must be positive");
  if (horizon < 1) throw ConfigError("exponential_beta schedule: horizon must be >= 1");
  // (beta/T)^(1/T) must decay.
  if (beta >= static_cast<double>(horizon)) {
    throw ConfigError("exponential_beta schedule: requires beta < horizon");
  }
  Schedule s;
  s.kind = Kind::ExponentialBeta;
  s.eta0 = eta0;
  s.beta = beta;
  s.horizon = horizon;
  return s;
}

Schedule Schedule::cosine(double eta0, int horizon) {
  if (eta0 <= 0.0) throw ConfigError("schedule: eta0 must be positive");
  if (horizon < 1) throw ConfigError("cosine schedule: horizon must be >= 1");
  Schedule s;
  s.kind = Kind::Cosine;
  s.eta0 = eta0;
  s.horizon = horizon;
  return s;
}

double Schedule::effective_alpha() const {
  if (kind == Kind::Exponential) return alpha;
  if (kind == Kind::ExponentialBeta) {
    return std::pow(beta / static_cast<double>(horizon),
                    1.0 / static_cast<double>(horizon));
  }
  throw ConfigError("effective_alpha: not an exponential schedule");
}

double Schedule::eval(int t) const {
  if (t < 1) throw ConfigError("schedule: t is 1-based");
  switch (kind) {
    case Kind::Constant:
      return eta0;
    case Kind::InvT:
      return eta0 / (1.0 + alpha * static_cast<double>(t));
    case Kind::InvSqrtT:
      return eta0 / (1.0 + alpha * std::sqrt(static_cast<double>(t)));
    case Kind::Exponential:
      return eta0 * std::pow(alpha, static_cast<double>(t));
    case Kind::ExponentialBeta:
      return eta0 * std::pow(effective_alpha(), static_cast<double>(t));
    case Kind::Cosine:
      if (t > horizon) throw ConfigError("cosine schedule: t exceeds the horizon");
      return 0.5 * eta0 *
             (1.0 + std::cos(static_cast<double>(t) * kPi /
                             static_cast<double>(horizon)));
  }
  throw ConfigError("unknown schedule kind");
}

ProjectionSet ProjectionSet::hypercube(Vector center, double halfwidth) {
  if (halfwidth <= 0.0) throw ConfigError("hypercube: halfwidth must be positive");
  ProjectionSet s;
  s.kind = Kind::Hypercube;
  s.center = std::move(center);
  s.halfwidth = halfwidth;
  return s;
}

ProjectionSet ProjectionSet::l2_ball(Vector center, double radius) {
  if (radius <= 0.0) throw ConfigError("l2_ball: radius must be positive");
  ProjectionSet s;
  s.kind = Kind::L2Ball;
  s.center = std::move(center);
  s.radius = radius;
  return s;
}

Vector project(const ProjectionSet& set, const Vector& x) {
  switch (set.kind) {
    case ProjectionSet::Kind::None:
      return x;

    case ProjectionSet::Kind::Hypercube: {
      if (set.center.size() != x.size()) {
        throw DimensionError("project: center length mismatch");
      }
      Vector out(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) {
        out[j] = std::clamp(x[j], set.center[j] - set.halfwidth,
                            set.center[j] + set.halfwidth);
      }
      return out;
    }

    case ProjectionSet::Kind::L2Ball: {
      if (set.center.size() != x.size()) {
        throw DimensionError("project: center length mismatch");
      }
      double dist_sq = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        double d = x[j] - set.center[j];
        dist_sq += d * d;
      }
      if (dist_sq <= set.radius * set.radius) return x;
      double scale = set.radius / std::sqrt(dist_sq);
      Vector out(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) {
        out[j] = set.center[j] + scale * (x[j] - set.center[j]);
      }
      return out;
    }
  }
  throw ConfigError("unknown projection kind");
}

double ftrl_eta(double s_inner, double s_norm, double alpha, double l) {
  if (alpha <= 0.0 || l <= 0.0) throw ConfigError("ftrl_eta: need alpha, l > 0");
  if (s_norm < 0.0) throw ConfigError("ftrl_eta: s_norm must be >= 0");
  double eta = (alpha + s_inner) / (l * (alpha + s_norm));
  return std::max(0.0, std::min(eta, 2.0 / l));
}

}  // namespace adaptix
