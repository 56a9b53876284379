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

#ifndef HDX_SPARSE_HPP_
#define HDX_SPARSE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hdx {

class WeightedGraph;

/// Compressed sparse row matrix of doubles.
struct CsrMatrix {
  std::size_t n = 0;
  std::vector<std::size_t> row_offsets;  // size n + 1
  std::vector<std::uint32_t> columns;
  std::vector<double> values;

  std::size_t nonzeros() const { return values.size(); }
};

/// S(u, v) = w(u, v) / sqrt(w(u) w(v)), rows sorted by column.
CsrMatrix normalized_adjacency_csr(const WeightedGraph& g);

void matvec_serial(const CsrMatrix& m, std::span<const double> x, std::span<double> y);
void matvec_parallel(const CsrMatrix& m, std::span<const double> x, std::span<double> y);

}  // namespace hdx

#endif  // HDX_SPARSE_HPP_
