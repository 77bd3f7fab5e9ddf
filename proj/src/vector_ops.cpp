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

#include "adaptix/vector_ops.hpp"

#include <cmath>

#include "adaptix/errors.hpp"

namespace adaptix {

double dot(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) {
    throw DimensionError("dot: length mismatch (" + std::to_string(u.size()) +
                         " vs " + std::to_string(v.size()) + ")");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

Norms norms(const Vector& u) {
  Norms n{0.0, 0.0, 0.0};
  for (double x : u) {
    double a = std::fabs(x);
    n.l1 += a;
    n.l2_sq += x * x;
    if (a > n.linf) n.linf = a;
  }
  return n;
}

double norm_l2(const Vector& u) { return std::sqrt(norms(u).l2_sq); }
double norm_l1(const Vector& u) { return norms(u).l1; }
double norm_linf(const Vector& u) { return norms(u).linf; }

bool all_finite(const Vector& u) {
  for (double x : u) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void check_finite(const Vector& u, const std::string& where) {
  if (!all_finite(u)) throw EvalError("non-finite value in " + where);
}

Vector filled(std::size_t d, double value) { return Vector(d, value); }

}  // namespace adaptix
