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

#ifndef HDX_WEIGHTED_GRAPH_HPP_
#define HDX_WEIGHTED_GRAPH_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hdx {

using Rational = boost::multiprecision::cpp_rational;

std::string rational_to_string(const Rational& r);
Rational parse_rational(const std::string& text);
inline double to_double(const Rational& r) { return r.convert_to<double>(); }

struct WeightedEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  Rational weight{1};
};

/// Per-vertex metadata written to the sidecar JSON of a graph export.
using VertexLabel = std::map<std::string, std::string>;

/// Undirected graph with positive rational edge weights. Vertex weights are
/// w(u) = sum of w(u, v) over incident edges.
class WeightedGraph {
 public:
  /// Throws std::invalid_argument on loops, repeated pairs, endpoints out of
  /// range or nonpositive weights.
  WeightedGraph(std::size_t n, std::vector<WeightedEdge> edges, std::string id = {});

  std::size_t n() const { return n_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

  const Rational& vertex_weight(std::uint32_t u) const { return vertex_weights_[u]; }
  std::size_t degree(std::uint32_t u) const { return adjacency_offsets_[u + 1] - adjacency_offsets_[u]; }
  /// Indices into edges() of the edges at u.
  std::vector<std::uint32_t> incident_edges(std::uint32_t u) const;
  std::vector<std::uint32_t> neighbors(std::uint32_t u) const;
  bool has_edge(std::uint32_t u, std::uint32_t v) const;
  bool uniform_weights() const;

  const std::vector<VertexLabel>& labels() const { return labels_; }
  void set_labels(std::vector<VertexLabel> labels);

 private:
  std::size_t n_;
  std::vector<WeightedEdge> edges_;
  std::string id_;
  std::vector<Rational> vertex_weights_;
  std::vector<std::size_t> adjacency_offsets_;
  std::vector<std::uint32_t> adjacency_;  // edge indices grouped by endpoint
  std::vector<VertexLabel> labels_;
};

enum class Connectivity { kConnected, kDisconnected, kEmpty };

/// Breadth-first reachability from vertex 0. A graph with no vertices is kEmpty.
Connectivity connectivity(const WeightedGraph& g);
inline bool is_connected(const WeightedGraph& g) { return connectivity(g) == Connectivity::kConnected; }

/// Two-colourability by breadth-first search.
bool is_bipartite(const WeightedGraph& g);

/// Writes to a temporary file in the same directory and renames it into place.
void write_text_atomically(const std::string& path, const std::string& content);

/// Writes `<prefix>.edges` ("vertices=N weighted=bool" then "u v [w]" lines)
/// and, when labels are present, `<prefix>.json` with the vertex labels.
void write_edge_list(const WeightedGraph& g, const std::string& prefix);
/// Reads `<prefix>.edges` (and the sidecar, if present).
WeightedGraph read_edge_list(const std::string& prefix);

}  // namespace hdx

#endif  // HDX_WEIGHTED_GRAPH_HPP_
