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

#include "hdx/coset_complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace hdx {

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

Face without(const Face& face, std::size_t position) {
  Face out;
  out.reserve(face.size() - 1);
  for (std::size_t k = 0; k < face.size(); ++k) {
    if (k != position) out.push_back(face[k]);
  }
  return out;
}

std::string face_to_string(const Face& face) {
  std::string out = "{";
  for (auto v : face) out += (out.size() > 1 ? "," : "") + std::to_string(v);
  return out + "}";
}

}  // namespace

// ---------------------------------------------------------------------------
// WeightedComplex

WeightedComplex::WeightedComplex(std::vector<std::uint32_t> vertex_types, std::vector<std::vector<Face>> levels,
                                 std::vector<std::vector<Rational>> weights)
    : vertex_types_(std::move(vertex_types)), levels_(std::move(levels)), weights_(std::move(weights)) {
  if (levels_.empty() || levels_.size() != weights_.size()) {
    throw std::invalid_argument("complex needs matching face and weight levels");
  }
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    if (levels_[k].size() != weights_[k].size()) throw std::invalid_argument("one weight per face required");
    for (const auto& f : levels_[k]) {
      if (f.size() != k) throw std::invalid_argument("face " + face_to_string(f) + " filed under the wrong level");
      if (!std::is_sorted(f.begin(), f.end()) || std::adjacent_find(f.begin(), f.end()) != f.end()) {
        throw std::invalid_argument("face " + face_to_string(f) + " is not a sorted vertex set");
      }
      for (auto v : f) {
        if (v >= vertex_types_.size()) throw std::invalid_argument("face uses an unknown vertex id");
      }
    }
    if (!std::is_sorted(levels_[k].begin(), levels_[k].end())) throw std::invalid_argument("faces must be sorted");
  }
  build_incidence();
}

WeightedComplex WeightedComplex::from_top_faces(std::vector<std::uint32_t> vertex_types, std::vector<Face> top_faces,
                                                std::vector<Rational> top_weights) {
  if (top_faces.empty() || top_faces.size() != top_weights.size()) {
    throw std::invalid_argument("need one weight per top face");
  }
  const std::size_t top_size = top_faces.front().size();
  std::vector<std::size_t> order(top_faces.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return top_faces[a] < top_faces[b]; });

  std::vector<std::vector<Face>> levels(top_size + 1);
  std::vector<std::vector<Rational>> weights(top_size + 1);
  for (auto k : order) {
    if (top_faces[k].size() != top_size) throw std::invalid_argument("top faces must all have the same size");
    if (!levels[top_size].empty() && levels[top_size].back() == top_faces[k]) {
      throw std::invalid_argument("repeated top face " + face_to_string(top_faces[k]));
    }
    levels[top_size].push_back(std::move(top_faces[k]));
    weights[top_size].push_back(std::move(top_weights[k]));
  }
  for (std::size_t size = top_size; size-- > 0;) {
    auto& faces = levels[size];
    for (const auto& tau : levels[size + 1]) {
      for (std::size_t pos = 0; pos < tau.size(); ++pos) faces.push_back(without(tau, pos));
    }
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    auto& w = weights[size];
    w.assign(faces.size(), Rational(0));
    for (std::size_t t = 0; t < levels[size + 1].size(); ++t) {
      const auto& tau = levels[size + 1][t];
      for (std::size_t pos = 0; pos < tau.size(); ++pos) {
        const Face sigma = without(tau, pos);
        const auto it = std::lower_bound(faces.begin(), faces.end(), sigma);
        w[static_cast<std::size_t>(it - faces.begin())] += weights[size + 1][t];
      }
    }
    // level i = size - 1, so the factor is 1 / (i + 2).
    for (auto& value : w) value /= static_cast<int>(size + 1);
  }
  return WeightedComplex(std::move(vertex_types), std::move(levels), std::move(weights));
}

WeightedComplex WeightedComplex::uniform(std::vector<std::uint32_t> vertex_types, std::vector<Face> top_faces) {
  std::sort(top_faces.begin(), top_faces.end());
  top_faces.erase(std::unique(top_faces.begin(), top_faces.end()), top_faces.end());
  std::vector<Rational> w(top_faces.size(), Rational(1, static_cast<long long>(top_faces.size())));
  return from_top_faces(std::move(vertex_types), std::move(top_faces), std::move(w));
}

std::optional<std::size_t> WeightedComplex::find(const Face& face) const {
  if (face.size() >= levels_.size()) return std::nullopt;
  const auto& level = levels_[face.size()];
  auto it = std::lower_bound(level.begin(), level.end(), face);
  if (it == level.end() || *it != face) return std::nullopt;
  return static_cast<std::size_t>(it - level.begin());
}

const Rational& WeightedComplex::weight(const Face& face) const {
  auto idx = find(face);
  if (!idx) throw std::invalid_argument("face " + face_to_string(face) + " is not in the complex");
  return weights_[face.size()][*idx];
}

void WeightedComplex::build_incidence() {
  const std::size_t nv = vertex_types_.size();
  incidence_offsets_.assign(levels_.size(), {});
  incidence_.assign(levels_.size(), {});
  for (std::size_t k = 1; k < levels_.size(); ++k) {
    auto& offsets = incidence_offsets_[k];
    offsets.assign(nv + 1, 0);
    for (const auto& f : levels_[k]) {
      for (auto v : f) ++offsets[v + 1];
    }
    for (std::size_t v = 0; v < nv; ++v) offsets[v + 1] += offsets[v];
    auto& entries = incidence_[k];
    entries.resize(offsets[nv]);
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::size_t idx = 0; idx < levels_[k].size(); ++idx) {
      for (auto v : levels_[k][idx]) entries[fill[v]++] = static_cast<std::uint32_t>(idx);
    }
  }
}

std::span<const std::uint32_t> WeightedComplex::incident(int level, std::uint32_t v) const {
  const auto k = static_cast<std::size_t>(level + 1);
  if (k == 0 || k >= levels_.size()) return {};
  const auto& offsets = incidence_offsets_[k];
  return {incidence_[k].data() + offsets[v], offsets[v + 1] - offsets[v]};
}

BalanceCheck verify_balanced(const WeightedComplex& x) {
  const int top = x.dimension();
  Rational total(0);
  for (const auto& w : x.weights(top)) total += w;
  if (total != 1) return {false, "top-level weights sum to " + rational_to_string(total) + ", not 1"};
  for (int level = top - 1; level >= -1; --level) {
    const auto& faces = x.faces(level);
    std::vector<Rational> cofaces(faces.size(), Rational(0));
    const auto& upper = x.faces(level + 1);
    const auto& upper_w = x.weights(level + 1);
    for (std::size_t t = 0; t < upper.size(); ++t) {
      for (std::size_t pos = 0; pos < upper[t].size(); ++pos) {
        const Face sigma = without(upper[t], pos);
        auto it = std::lower_bound(faces.begin(), faces.end(), sigma);
        if (it == faces.end() || *it != sigma) {
          return {false, "face " + face_to_string(sigma) + " of " + face_to_string(upper[t]) + " is missing"};
        }
        cofaces[static_cast<std::size_t>(it - faces.begin())] += upper_w[t];
      }
    }
    for (std::size_t k = 0; k < faces.size(); ++k) {
      const Rational expected = cofaces[k] / (level + 2);
      if (x.weights(level)[k] != expected) {
        return {false, "level " + std::to_string(level) + " face " + face_to_string(faces[k]) + " has weight " +
                           rational_to_string(x.weights(level)[k]) + ", balance requires " +
                           rational_to_string(expected)};
      }
    }
  }
  return {};
}

bool is_pure(const WeightedComplex& x) {
  for (int level = -1; level < x.dimension(); ++level) {
    std::vector<char> covered(x.faces(level).size(), 0);
    for (const auto& tau : x.faces(level + 1)) {
      for (std::size_t pos = 0; pos < tau.size(); ++pos) {
        if (auto idx = x.find(without(tau, pos))) covered[*idx] = 1;
      }
    }
    if (std::find(covered.begin(), covered.end(), 0) != covered.end()) return false;
  }
  return true;
}

bool is_partite(const WeightedComplex& x) {
  for (int level = 1; level <= x.dimension(); ++level) {
    for (const auto& f : x.faces(level)) {
      std::set<std::uint32_t> types;
      for (auto v : f) {
        if (!types.insert(x.vertex_type(v)).second) return false;
      }
    }
  }
  return true;
}

LinkView link(const WeightedComplex& x, const Face& f) {
  const auto base_idx = x.find(f);
  if (!base_idx) throw std::invalid_argument("face " + face_to_string(f) + " is not in the complex");
  const Rational& base_weight = x.weights(static_cast<int>(f.size()) - 1)[*base_idx];
  const int top = x.dimension();
  std::vector<std::vector<Face>> levels;
  std::vector<std::vector<Rational>> weights;
  for (int level = static_cast<int>(f.size()) - 1; level <= top; ++level) {
    const auto size = static_cast<std::size_t>(level + 1);
    const Rational scale = base_weight * static_cast<long long>(binomial(size, f.size()));
    std::vector<std::pair<Face, Rational>> found;
    auto take = [&](std::size_t idx) {
      const Face& t = x.faces(level)[idx];
      if (!std::includes(t.begin(), t.end(), f.begin(), f.end())) return;
      Face rest;
      std::set_difference(t.begin(), t.end(), f.begin(), f.end(), std::back_inserter(rest));
      found.emplace_back(std::move(rest), x.weights(level)[idx] / scale);
    };
    if (f.empty()) {
      for (std::size_t idx = 0; idx < x.faces(level).size(); ++idx) take(idx);
    } else {
      for (auto idx : x.incident(level, f.front())) take(idx);
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    levels.emplace_back();
    weights.emplace_back();
    for (auto& [face, w] : found) {
      levels.back().push_back(std::move(face));
      weights.back().push_back(std::move(w));
    }
  }
  return LinkView{f, WeightedComplex(x.vertex_types(), std::move(levels), std::move(weights))};
}

WeightedGraph one_skeleton(const WeightedComplex& x, std::vector<std::uint32_t>* vertex_ids) {
  std::vector<std::uint32_t> ids;
  std::unordered_map<std::uint32_t, std::uint32_t> local;
  if (x.dimension() >= 0) {
    for (const auto& v : x.faces(0)) {
      local.emplace(v.front(), static_cast<std::uint32_t>(ids.size()));
      ids.push_back(v.front());
    }
  }
  std::vector<WeightedEdge> edges;
  if (x.dimension() >= 1) {
    const auto& faces = x.faces(1);
    edges.reserve(faces.size());
    for (std::size_t k = 0; k < faces.size(); ++k) {
      edges.push_back({local.at(faces[k][0]), local.at(faces[k][1]), x.weights(1)[k]});
    }
  }
  WeightedGraph g(ids.size(), std::move(edges));
  if (vertex_ids) *vertex_ids = std::move(ids);
  return g;
}

// ---------------------------------------------------------------------------
// Coset complexes

std::uint32_t CosetComplex::coset_id(std::uint32_t vertex) const {
  const std::uint32_t type = complex.vertex_type(vertex);
  return vertex - type_offsets[type - 1];
}

VertexLabel CosetComplex::vertex_label(std::uint32_t vertex) const {
  const std::uint32_t type = complex.vertex_type(vertex);
  const std::uint32_t coset = coset_id(vertex);
  return {{"type", std::to_string(type)},
          {"coset", std::to_string(coset)},
          {"representative", cosets[type - 1].representative(coset).to_string()}};
}

CosetComplex build_complex(const GroupParams& params, const BuildOptions& options) {
  params.validate();
  const GroupCache cache(options.cache_dir);
  auto group = cache.k_group(params, IndexSet{}, options.closure);
  std::vector<std::shared_ptr<const GroupEnumeration>> subgroups;
  std::vector<CosetTable> tables;
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> vertex_types;
  for (std::uint32_t i = 1; i <= params.d; ++i) {
    subgroups.push_back(cache.k_group(params, IndexSet{i}, options.closure));
    tables.push_back(enumerate_cosets(group, subgroups.back()));
    offsets.push_back(static_cast<std::uint32_t>(vertex_types.size()));
    vertex_types.insert(vertex_types.end(), tables.back().size(), i);
  }
  std::vector<Face> tops(group->order());
  const auto order = static_cast<std::int64_t>(group->order());
#pragma omp parallel for schedule(static)
  for (std::int64_t g = 0; g < order; ++g) {
    Face face(params.d);
    for (std::uint32_t i = 0; i < params.d; ++i) {
      face[i] = offsets[i] + tables[i].coset_of_index(static_cast<std::size_t>(g));
    }
    tops[static_cast<std::size_t>(g)] = std::move(face);
  }
  auto complex = WeightedComplex::uniform(std::move(vertex_types), std::move(tops));
  return CosetComplex{params, std::move(group), std::move(subgroups), std::move(tables), std::move(offsets),
                      std::move(complex)};
}

LocalLink local_link(const GroupParams& params, std::uint32_t type_a, std::uint32_t type_b,
                     const ClosureOptions& options) {
  params.validate();
  if (type_a < 1 || type_a > params.d || type_b < 1 || type_b > params.d || type_a == type_b) {
    throw std::invalid_argument("local_link needs two distinct types in [1, d]");
  }
  IndexSet s_set;
  for (std::uint32_t i = 1; i <= params.d; ++i) {
    if (i != type_a && i != type_b) s_set = s_set.with(i);
  }
  auto h = std::make_shared<const GroupEnumeration>(bfs_closure(k_generators(params, s_set), options));
  auto h_a = std::make_shared<const GroupEnumeration>(bfs_closure(k_generators(params, s_set.with(type_a)), options));
  auto h_b = std::make_shared<const GroupEnumeration>(bfs_closure(k_generators(params, s_set.with(type_b)), options));
  CosetTable cosets_a = enumerate_cosets(h, h_a);
  CosetTable cosets_b = enumerate_cosets(h, h_b);
  const auto na = static_cast<std::uint32_t>(cosets_a.size());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(h->order());
  for (std::size_t idx = 0; idx < h->order(); ++idx) {
    pairs.emplace_back(cosets_a.coset_of_index(idx), na + cosets_b.coset_of_index(idx));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  const Rational w(1, static_cast<long long>(pairs.size()));
  std::vector<WeightedEdge> edges;
  edges.reserve(pairs.size());
  for (auto [u, v] : pairs) edges.push_back({u, v, w});
  WeightedGraph graph(na + cosets_b.size(), std::move(edges),
                      "local_link_" + params.to_string() + "_types_" + std::to_string(type_a) + "_" +
                          std::to_string(type_b));
  std::vector<VertexLabel> labels;
  for (std::uint32_t c = 0; c < na; ++c) {
    labels.push_back({{"type", std::to_string(type_a)}, {"representative", cosets_a.representative(c).to_string()}});
  }
  for (std::uint32_t c = 0; c < cosets_b.size(); ++c) {
    labels.push_back({{"type", std::to_string(type_b)}, {"representative", cosets_b.representative(c).to_string()}});
  }
  graph.set_labels(std::move(labels));
  return LocalLink{params, type_a, type_b, std::move(h), std::move(h_a), std::move(h_b),
                   std::move(cosets_a), std::move(cosets_b), std::move(graph)};
}

WeightedGraph local_link_graph(std::uint32_t p, std::uint32_t s, std::uint32_t d, std::uint32_t i,
                               const ClosureOptions& options) {
  const GroupParams params{{p, s}, d};
  params.validate();
  if (i < 1 || i > d) throw std::invalid_argument("local_link_graph needs i in [1, d]");
  return std::move(local_link(params, i, i % d + 1, options).graph);
}

std::optional<std::string> compare_link_with_local(const CosetComplex& cc, const Face& face, const LocalLink& local) {
  const std::uint32_t d = cc.params.d;
  if (face.size() + 2 != d) return "face must have d - 2 vertices";
  for (auto v : face) {
    const auto t = cc.complex.vertex_type(v);
    if (t == local.type_a || t == local.type_b) return "face type does not match the local construction";
  }
  // A common element g of all cosets in the face.
  const std::uint32_t t0 = cc.complex.vertex_type(face.front());
  const RingMatrix& r0 = cc.cosets[t0 - 1].representative(cc.coset_id(face.front()));
  std::optional<RingMatrix> g;
  for (const auto& k : cc.subgroups[t0 - 1]->elements()) {
    RingMatrix x = r0 * k;
    bool common = true;
    for (auto v : face) {
      const auto t = cc.complex.vertex_type(v);
      common = common && cc.cosets[t - 1].coset_of(x) == cc.coset_id(v);
    }
    if (common) {
      g = std::move(x);
      break;
    }
  }
  if (!g) return "face has no common coset element";

  std::vector<std::uint32_t> ids;
  const WeightedGraph skeleton = one_skeleton(link(cc.complex, face).complex, &ids);
  const auto na = static_cast<std::uint32_t>(local.cosets_a.size());
  std::map<std::uint32_t, std::uint32_t> to_local;
  std::map<std::uint32_t, std::uint32_t> to_global;
  auto record = [&](std::uint32_t global, std::uint32_t loc) -> std::optional<std::string> {
    auto [it, inserted] = to_local.emplace(global, loc);
    if (!inserted && it->second != loc) return "link vertex " + std::to_string(global) + " maps to two local cosets";
    auto [jt, inserted_back] = to_global.emplace(loc, global);
    if (!inserted_back && jt->second != global) return "local coset " + std::to_string(loc) + " is hit twice";
    return std::nullopt;
  };
  for (std::size_t hi = 0; hi < local.h->order(); ++hi) {
    const RingMatrix x = *g * local.h->element(hi);
    const auto xi = cc.group->index_of(x);
    if (!xi) return "translated element left G";
    const std::uint32_t ga = cc.vertex_id(local.type_a, cc.cosets[local.type_a - 1].coset_of_index(*xi));
    const std::uint32_t gb = cc.vertex_id(local.type_b, cc.cosets[local.type_b - 1].coset_of_index(*xi));
    if (auto err = record(ga, local.cosets_a.coset_of_index(hi))) return err;
    if (auto err = record(gb, na + local.cosets_b.coset_of_index(hi))) return err;
  }
  if (to_local.size() != ids.size() || to_global.size() != local.graph.n()) {
    return "vertex counts differ: link " + std::to_string(ids.size()) + ", local " + std::to_string(local.graph.n());
  }
  std::set<std::pair<std::uint32_t, std::uint32_t>> mapped;
  for (const auto& e : skeleton.edges()) {
    auto iu = to_local.find(ids[e.u]);
    auto iv = to_local.find(ids[e.v]);
    if (iu == to_local.end() || iv == to_local.end()) return "link vertex outside the coset bijection";
    mapped.emplace(std::min(iu->second, iv->second), std::max(iu->second, iv->second));
  }
  std::set<std::pair<std::uint32_t, std::uint32_t>> expected;
  for (const auto& e : local.graph.edges()) expected.emplace(std::min(e.u, e.v), std::max(e.u, e.v));
  if (mapped != expected) return "edge sets differ under the coset bijection";
  if (!skeleton.uniform_weights() || !local.graph.uniform_weights()) return "link weights are not uniform";
  return std::nullopt;
}

std::optional<std::string> compare_translated_links(const CosetComplex& cc, const RingMatrix& g, std::uint32_t type) {
  const RingMatrix g_inv = mat_inv(g);
  const RingMatrix id = RingMatrix::identity(cc.params);
  const std::uint32_t v1 = cc.vertex_id(type, cc.cosets[type - 1].coset_of(g));
  const std::uint32_t v0 = cc.vertex_id(type, cc.cosets[type - 1].coset_of(id));
  const LinkView link1 = link(cc.complex, {v1});
  const LinkView link0 = link(cc.complex, {v0});
  auto translate = [&](std::uint32_t v) {
    const std::uint32_t t = cc.complex.vertex_type(v);
    const RingMatrix& rep = cc.cosets[t - 1].representative(cc.coset_id(v));
    return cc.vertex_id(t, cc.cosets[t - 1].coset_of(g_inv * rep));
  };
  for (int level = -1; level <= link1.complex.dimension(); ++level) {
    const auto& faces = link1.complex.faces(level);
    if (level > link0.complex.dimension() || faces.size() != link0.complex.faces(level).size()) {
      return "level " + std::to_string(level) + " sizes differ";
    }
    for (std::size_t k = 0; k < faces.size(); ++k) {
      Face image;
      for (auto v : faces[k]) image.push_back(translate(v));
      std::sort(image.begin(), image.end());
      auto idx = link0.complex.find(image);
      if (!idx) return "translated face " + face_to_string(image) + " is not in the link of K_" + std::to_string(type);
      if (link0.complex.weights(level)[*idx] != link1.complex.weights(level)[k]) {
        return "translated face " + face_to_string(image) + " has a different weight";
      }
    }
  }
  return std::nullopt;
}

void write_face_list(const CosetComplex& cc, const std::string& path, std::optional<int> level) {
  const int top = cc.complex.dimension();
  if (level && (*level < -1 || *level > top || cc.complex.faces(*level).empty())) {
    throw std::invalid_argument("face selection at level " + std::to_string(*level) + " is empty");
  }
  std::ostringstream out;
  for (int l = level.value_or(-1); l <= (level ? *level : top); ++l) {
    for (const auto& f : cc.complex.faces(l)) {
      std::string types;
      std::string ids;
      for (auto v : f) {
        types += (types.empty() ? "" : ",") + std::to_string(cc.complex.vertex_type(v));
        ids += (ids.empty() ? "" : ",") + std::to_string(cc.coset_id(v));
      }
      out << l << ';' << types << ';' << ids << '\n';
    }
  }
  write_text_atomically(path, out.str());
}

}  // namespace hdx
