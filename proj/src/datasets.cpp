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

#include "adaptix/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "adaptix/errors.hpp"

namespace adaptix {

namespace {

struct SparseRow {
  double label;
  std::vector<std::pair<int, double>> entries;  // 1-based index, value
};

double parse_number(const std::string& tok, int line_no, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(std::string("malformed ") + what + " '" + tok + "'", line_no);
  }
  if (used != tok.size()) {
    throw ParseError(std::string("malformed ") + what + " '" + tok + "'", line_no);
  }
  return v;
}

}  // namespace

Dataset parse_libsvm(const std::string& text) {
  std::vector<SparseRow> rows;
  int max_index = 0;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream toks(line);
    std::string tok;
    if (!(toks >> tok)) continue;  // blank line

    SparseRow row;
    row.label = parse_number(tok, line_no, "label");
    int prev_index = 0;
    while (toks >> tok) {
      std::size_t colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size()) {
        throw ParseError("malformed feature token '" + tok + "'", line_no);
      }
      std::string idx_part = tok.substr(0, colon);
      int index = 0;
      try {
        std::size_t used = 0;
        index = std::stoi(idx_part, &used);
        if (used != idx_part.size()) throw std::invalid_argument(idx_part);
      } catch (const std::exception&) {
        throw ParseError("malformed feature index '" + idx_part + "'", line_no);
      }
      if (index <= prev_index) {
        throw ParseError("feature indices must be ascending and 1-based", line_no);
      }
      double value = parse_number(tok.substr(colon + 1), line_no, "feature value");
      row.entries.emplace_back(index, value);
      prev_index = index;
    }
    if (prev_index > max_index) max_index = prev_index;
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no samples in input", line_no == 0 ? 1 : line_no);

  Dataset ds;
  ds.features.reserve(rows.size());
  ds.labels.reserve(rows.size());
  for (const SparseRow& row : rows) {
    Vector dense(static_cast<std::size_t>(max_index), 0.0);
    for (const auto& [index, value] : row.entries) {
      dense[static_cast<std::size_t>(index - 1)] = value;
    }
    ds.features.push_back(std::move(dense));
    ds.labels.push_back(row.label);
  }
  return ds;
}

Dataset load_libsvm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open dataset file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_libsvm(buf.str());
}

std::string serialize_libsvm(const Dataset& ds) {
  std::ostringstream out;
  char buf[64];
  for (std::size_t i = 0; i < ds.features.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", ds.labels[i]);
    out << buf;
    const Vector& row = ds.features[i];
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == 0.0) continue;
      std::snprintf(buf, sizeof(buf), "%.17g", row[j]);
      out << ' ' << (j + 1) << ':' << buf;
    }
    out << '\n';
  }
  return out.str();
}

Dataset balance_and_bias(const Dataset& ds, Rng& rng) {
  if (ds.features.empty()) throw ConfigError("balance_and_bias: empty dataset");
  double first = ds.labels[0];
  double second = first;
  for (double y : ds.labels) {
    if (y != first) {
      second = y;
      break;
    }
  }
  if (second == first) {
    throw ConfigError("balance_and_bias: only one class present");
  }
  for (double y : ds.labels) {
    if (y != first && y != second) {
      throw ConfigError("balance_and_bias: labels are not binary");
    }
  }

  std::vector<std::size_t> first_idx, second_idx;
  for (std::size_t i = 0; i < ds.labels.size(); ++i) {
    (ds.labels[i] == first ? first_idx : second_idx).push_back(i);
  }
  std::vector<std::size_t>& majority =
      first_idx.size() >= second_idx.size() ? first_idx : second_idx;
  std::size_t keep = std::min(first_idx.size(), second_idx.size());

  // Seeded sample without replacement; row order is preserved on output.
  std::vector<std::size_t> pool = majority;
  for (std::size_t i = 0; i < keep; ++i) {
    std::size_t pick = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[pick]);
  }
  pool.resize(keep);
  std::vector<bool> kept(ds.labels.size(), true);
  for (std::size_t i : majority) kept[i] = false;
  for (std::size_t i : pool) kept[i] = true;

  Dataset out;
  for (std::size_t i = 0; i < ds.labels.size(); ++i) {
    if (!kept[i]) continue;
    Vector row = ds.features[i];
    row.push_back(1.0);  // bias column
    out.features.push_back(std::move(row));
    out.labels.push_back(ds.labels[i]);
  }
  return out;
}

Dataset synth_classification(int n, int d, double noise, Rng& rng) {
  if (n < 1 || d < 1) throw ConfigError("synth_classification: need n, d >= 1");
  Vector w(static_cast<std::size_t>(d));
  for (double& wj : w) wj = rng.gauss();

  for (int attempt = 0; attempt < 1000; ++attempt) {
    Dataset ds;
    ds.features.reserve(static_cast<std::size_t>(n));
    ds.labels.reserve(static_cast<std::size_t>(n));
    int positives = 0;
    for (int i = 0; i < n; ++i) {
      Vector row(static_cast<std::size_t>(d));
      for (double& v : row) v = rng.gauss();
      double margin = dot(row, w) + rng.gauss(0.0, noise);
      double label = margin >= 0.0 ? 1.0 : -1.0;
      if (label > 0.0) ++positives;
      ds.features.push_back(std::move(row));
      ds.labels.push_back(label);
    }
    if (std::abs(2 * positives - n) <= n / 10) return ds;
  }
  throw ConfigError("synth_classification: could not balance classes");
}

Dataset drop_validation_split(const Dataset& ds, double fraction, uint64_t seed) {
  if (fraction < 0.0 || fraction >= 1.0) {
    throw ConfigError("drop_validation_split: fraction must be in [0, 1)");
  }
  if (fraction == 0.0) return ds;
  std::size_t m = ds.features.size();
  std::size_t drop = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(m)));
  if (drop >= m) throw ConfigError("drop_validation_split: nothing left to train on");

  Rng rng(seed);
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  for (std::size_t i = 0; i < drop; ++i) {
    std::size_t pick = i + static_cast<std::size_t>(rng.below(m - i));
    std::swap(order[i], order[pick]);
  }
  std::vector<bool> dropped(m, false);
  for (std::size_t i = 0; i < drop; ++i) dropped[order[i]] = true;

  Dataset out;
  for (std::size_t i = 0; i < m; ++i) {
    if (dropped[i]) continue;
    out.features.push_back(ds.features[i]);
    out.labels.push_back(ds.labels[i]);
  }
  return out;
}

}  // namespace adaptix
