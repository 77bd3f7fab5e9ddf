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

#ifndef ADAPTIX_VECTOR_OPS_HPP_
#define ADAPTIX_VECTOR_OPS_HPP_

#include <string>
#include <vector>

namespace adaptix {

// Dense coordinate vector, the universal state/gradient carrier. Length is
// fixed for the lifetime of a run; finiteness is checked at module
// boundaries (not per flop).
using Vector = std::vector<double>;
using Matrix = std::vector<Vector>;  // row-major list of rows

struct Norms {
  double l1;
  double l2_sq;
  double linf;
};

// Inner product. Throws DimensionError on length mismatch.
double dot(const Vector& u, const Vector& v);

Norms norms(const Vector& u);

double norm_l2(const Vector& u);
double norm_l1(const Vector& u);
double norm_linf(const Vector& u);

bool all_finite(const Vector& u);

// Throws EvalError naming `where` if any entry is NaN/Inf.
void check_finite(const Vector& u, const std::string& where);

Vector filled(std::size_t d, double value);

}  // namespace adaptix

#endif  // ADAPTIX_VECTOR_OPS_HPP_
