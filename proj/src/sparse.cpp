// Copyright 2026 The hdx Authors
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

#include "hdx/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hdx/weighted_graph.hpp"

namespace hdx {

CsrMatrix normalized_adjacency_csr(const WeightedGraph& g) {
  CsrMatrix m;
  m.n = g.n();
  std::vector<double> root(g.n());
  for (std::uint32_t u = 0; u < g.n(); ++u) {
    const double w = to_double(g.vertex_weight(u));
    if (!(w > 0.0)) throw std::invalid_argument("normalized adjacency: vertex " + std::to_string(u) + " is isolated");
    root[u] = std::sqrt(w);
  }
  m.row_offsets.assign(g.n() + 1, 0);
  for (const auto& e : g.edges()) {
    ++m.row_offsets[e.u + 1];
    ++m.row_offsets[e.v + 1];
  }
  for (std::size_t u = 0; u < g.n(); ++u) m.row_offsets[u + 1] += m.row_offsets[u];
  m.columns.resize(m.row_offsets.back());
  m.values.resize(m.row_offsets.back());
  std::vector<std::size_t> fill(m.row_offsets.begin(), m.row_offsets.end() - 1);
  for (const auto& e : g.edges()) {
    const double w = to_double(e.weight);
    m.columns[fill[e.u]] = e.v;
    m.values[fill[e.u]++] = w / (root[e.u] * root[e.v]);
    m.columns[fill[e.v]] = e.u;
    m.values[fill[e.v]++] = w / (root[e.u] * root[e.v]);
  }
  std::vector<std::pair<std::uint32_t, double>> scratch;
  for (std::size_t u = 0; u < m.n; ++u) {
    const std::size_t lo = m.row_offsets[u];
    const std::size_t hi = m.row_offsets[u + 1];
    scratch.clear();
    for (std::size_t k = lo; k < hi; ++k) scratch.emplace_back(m.columns[k], m.values[k]);
    std::sort(scratch.begin(), scratch.end());
    for (std::size_t k = lo; k < hi; ++k) {
      m.columns[k] = scratch[k - lo].first;
      m.values[k] = scratch[k - lo].second;
    }
  }
  return m;
}

namespace {

void check_sizes(const CsrMatrix& m, std::span<const double> x, std::span<double> y) {
  if (x.size() != m.n || y.size() != m.n) throw std::invalid_argument("matvec: dimension mismatch");
}

}  // namespace

void matvec_serial(const CsrMatrix& m, std::span<const double> x, std::span<double> y) {
  check_sizes(m, x, y);
  for (std::size_t u = 0; u < m.n; ++u) {
    double acc = 0.0;
    for (std::size_t k = m.row_offsets[u]; k < m.row_offsets[u + 1]; ++k) acc += m.values[k] * x[m.columns[k]];
    y[u] = acc;
  }
}

void matvec_parallel(const CsrMatrix& m, std::span<const double> x, std::span<double> y) {
  check_sizes(m, x, y);
  const auto n = static_cast<std::int64_t>(m.n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    double acc = 0.0;
    for (std::size_t k = m.row_offsets[u]; k < m.row_offsets[u + 1]; ++k) acc += m.values[k] * x[m.columns[k]];
    y[u] = acc;
  }
}

}  // namespace hdx
