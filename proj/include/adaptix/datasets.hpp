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

#ifndef ADAPTIX_DATASETS_HPP_
#define ADAPTIX_DATASETS_HPP_

#include <string>

#include "adaptix/rng.hpp"
#include "adaptix/vector_ops.hpp"

namespace adaptix {

struct Dataset {
  Matrix features;  // m rows, d columns, sparse input flattened to dense
  Vector labels;    // length m
};

// Parses LibSVM text: lines of `label idx:val idx:val ...` with 1-based
// strictly ascending indices. Absent indices are zero; the column count is
// the maximum index seen. Throws ParseError (with line number) on malformed
// tokens, non-ascending indices, or an input with no samples.
Dataset parse_libsvm(const std::string& text);

Dataset load_libsvm_file(const std::string& path);

// Inverse of parse_libsvm up to zero entries; parse(serialize(ds)) == ds.
std::string serialize_libsvm(const Dataset& ds);

// For a binary-labeled dataset: subsamples the majority class (seeded,
// without replacement, original row order kept) down to the minority size,
// then appends a constant-1 bias column. Throws ConfigError if only one
// class is present.
Dataset balance_and_bias(const Dataset& ds, Rng& rng);

// Synthetic binary classification: gaussian rows, labels from the sign of a
// hidden linear model plus noise. Resampled until the class split is within
// 10% of even. Deterministic given the rng seed.
Dataset synth_classification(int n, int d, double noise, Rng& rng);

// Drops a seeded random fraction of rows (a held-out split) and returns the
// remainder. fraction in [0, 1).
Dataset drop_validation_split(const Dataset& ds, double fraction, uint64_t seed);

}  // namespace adaptix

#endif  // ADAPTIX_DATASETS_HPP_
