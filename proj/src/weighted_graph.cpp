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

#include "hdx/weighted_graph.hpp"

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace hdx {

std::string rational_to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
  return Rational(boost::multiprecision::cpp_int(text.substr(0, slash)),
                  boost::multiprecision::cpp_int(text.substr(slash + 1)));
}

WeightedGraph::WeightedGraph(std::size_t n, std::vector<WeightedEdge> edges, std::string id)
    : n_(n), edges_(std::move(edges)), id_(std::move(id)), vertex_weights_(n, Rational(0)) {
  std::unordered_set<std::uint64_t> pairs;
  pairs.reserve(edges_.size());
  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : edges_) {
    if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("loops are not allowed");
    if (e.weight <= 0) throw std::invalid_argument("edge weights must be positive");
    const std::uint64_t key = (std::uint64_t{std::min(e.u, e.v)} << 32) | std::max(e.u, e.v);
    if (!pairs.insert(key).second) {
      throw std::invalid_argument("repeated edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    vertex_weights_[e.u] += e.weight;
    vertex_weights_[e.v] += e.weight;
    ++degree[e.u];
    ++degree[e.v];
  }
  adjacency_offsets_.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) adjacency_offsets_[u + 1] = adjacency_offsets_[u] + degree[u];
  adjacency_.resize(adjacency_offsets_[n]);
  std::vector<std::size_t> fill(adjacency_offsets_.begin(), adjacency_offsets_.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    adjacency_[fill[edges_[k].u]++] = static_cast<std::uint32_t>(k);
    adjacency_[fill[edges_[k].v]++] = static_cast<std::uint32_t>(k);
  }
}

std::vector<std::uint32_t> WeightedGraph::incident_edges(std::uint32_t u) const {
  return {adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offsets_[u]),
          adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offsets_[u + 1])};
}

std::vector<std::uint32_t> WeightedGraph::neighbors(std::uint32_t u) const {
  std::vector<std::uint32_t> out;
  out.reserve(degree(u));
  for (std::size_t k = adjacency_offsets_[u]; k < adjacency_offsets_[u + 1]; ++k) {
    const auto& e = edges_[adjacency_[k]];
    out.push_back(e.u == u ? e.v : e.u);
  }
  return out;
}

bool WeightedGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
  for (std::size_t k = adjacency_offsets_[u]; k < adjacency_offsets_[u + 1]; ++k) {
    const auto& e = edges_[adjacency_[k]];
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return true;
  }
  return false;
}

bool WeightedGraph::uniform_weights() const {
  return std::all_of(edges_.begin(), edges_.end(), [&](const WeightedEdge& e) { return e.weight == edges_.front().weight; });
}

void WeightedGraph::set_labels(std::vector<VertexLabel> labels) {
  if (!labels.empty() && labels.size() != n_) throw std::invalid_argument("one label per vertex required");
  labels_ = std::move(labels);
}

Connectivity connectivity(const WeightedGraph& g) {
  if (g.n() == 0) return Connectivity::kEmpty;
  std::vector<char> seen(g.n(), 0);
  std::queue<std::uint32_t> queue;
  queue.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop();
    for (auto v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        queue.push(v);
      }
    }
  }
  return reached == g.n() ? Connectivity::kConnected : Connectivity::kDisconnected;
}

bool is_bipartite(const WeightedGraph& g) {
  std::vector<int> colour(g.n(), -1);
  for (std::uint32_t start = 0; start < g.n(); ++start) {
    if (colour[start] >= 0) continue;
    colour[start] = 0;
    std::queue<std::uint32_t> queue;
    queue.push(start);
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop();
      for (auto v : g.neighbors(u)) {
        if (colour[v] < 0) {
          colour[v] = 1 - colour[u];
          queue.push(v);
        } else if (colour[v] == colour[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

void write_text_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    if (!out) throw std::runtime_error("failed writing " + tmp);
  }
  fs::rename(tmp, target);
}

void write_edge_list(const WeightedGraph& g, const std::string& prefix) {
  const bool weighted = !g.uniform_weights();
  std::ostringstream out;
  out << "vertices=" << g.n() << " weighted=" << (weighted ? "true" : "false") << '\n';
  for (const auto& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (weighted) out << ' ' << rational_to_string(e.weight);
    out << '\n';
  }
  write_text_atomically(prefix + ".edges", out.str());
  if (!g.labels().empty()) {
    nlohmann::json sidecar;
    sidecar["graph_id"] = g.id();
    sidecar["vertices"] = nlohmann::json::array();
    for (const auto& label : g.labels()) sidecar["vertices"].push_back(label);
    write_text_atomically(prefix + ".json", sidecar.dump(1) + "\n");
  }
}

WeightedGraph read_edge_list(const std::string& prefix) {
  std::ifstream in(prefix + ".edges");
  if (!in) throw std::runtime_error("cannot read " + prefix + ".edges");
  std::string header;
  std::getline(in, header);
  std::size_t n = 0;
  char weighted_text[8] = {0};
  if (std::sscanf(header.c_str(), "vertices=%zu weighted=%5s", &n, weighted_text) != 2) {
    throw std::runtime_error("bad edge-list header '" + header + "'");
  }
  const bool weighted = std::string(weighted_text) == "true";
  std::vector<WeightedEdge> edges;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    WeightedEdge e;
    std::string w;
    fields >> e.u >> e.v;
    if (!fields) throw std::runtime_error("bad edge line '" + line + "'");
    if (weighted) {
      fields >> w;
      e.weight = parse_rational(w);
    }
    edges.push_back(std::move(e));
  }
  WeightedGraph g(n, std::move(edges));
  std::ifstream sidecar_in(prefix + ".json");
  if (sidecar_in) {
    auto sidecar = nlohmann::json::parse(sidecar_in);
    g.set_id(sidecar.value("graph_id", std::string{}));
    std::vector<VertexLabel> labels;
    for (const auto& v : sidecar.at("vertices")) labels.push_back(v.get<VertexLabel>());
    g.set_labels(std::move(labels));
  }
  return g;
}

}  // namespace hdx
