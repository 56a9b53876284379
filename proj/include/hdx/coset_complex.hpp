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

#ifndef HDX_COSET_COMPLEX_HPP_
#define HDX_COSET_COMPLEX_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdx/matrix_group.hpp"
#include "hdx/weighted_graph.hpp"

namespace hdx {

/// Sorted global vertex ids. The empty face is the unique face of level -1.
using Face = std::vector<std::uint32_t>;

/// Pure partite simplicial complex with exact rational weights. Levels run
/// from -1 (the empty face) to the top dimension; faces within a level are
/// sorted lexicographically.
class WeightedComplex {
 public:
  /// `levels[k]` holds the faces of level k - 1, `weights[k]` their weights.
  /// `vertex_types[v]` is the (1-based) type of global vertex v.
  WeightedComplex(std::vector<std::uint32_t> vertex_types, std::vector<std::vector<Face>> levels,
                  std::vector<std::vector<Rational>> weights);

  /// Down-closes the top faces and derives lower-level weights from
  /// w(sigma) = 1/(i+2) * sum of w(tau) over tau in X(i+1) containing sigma.
  static WeightedComplex from_top_faces(std::vector<std::uint32_t> vertex_types, std::vector<Face> top_faces,
                                        std::vector<Rational> top_weights);
  /// Same with the uniform distribution on the top faces.
  static WeightedComplex uniform(std::vector<std::uint32_t> vertex_types, std::vector<Face> top_faces);

  /// Dimension of the top faces (-1 for the complex {{}}).
  int dimension() const { return static_cast<int>(levels_.size()) - 2; }
  const std::vector<Face>& faces(int level) const { return levels_.at(static_cast<std::size_t>(level + 1)); }
  const std::vector<Rational>& weights(int level) const { return weights_.at(static_cast<std::size_t>(level + 1)); }
  std::optional<std::size_t> find(const Face& face) const;
  const Rational& weight(const Face& face) const;

  std::size_t num_vertex_ids() const { return vertex_types_.size(); }
  std::uint32_t vertex_type(std::uint32_t v) const { return vertex_types_[v]; }
  const std::vector<std::uint32_t>& vertex_types() const { return vertex_types_; }

  /// Indices of the faces of `level` that contain vertex v.
  std::span<const std::uint32_t> incident(int level, std::uint32_t v) const;

 private:
  void build_incidence();

  std::vector<std::uint32_t> vertex_types_;
  std::vector<std::vector<Face>> levels_;
  std::vector<std::vector<Rational>> weights_;
  // incidence_[level + 1]: CSR over vertex ids.
  std::vector<std::vector<std::size_t>> incidence_offsets_;
  std::vector<std::vector<std::uint32_t>> incidence_;
};

struct BalanceCheck {
  bool ok = true;
  std::string violation;
};

/// Checks both balance conditions exactly: the top weights sum to 1 and every
/// lower weight equals 1/(i+2) times the weight of its cofaces.
BalanceCheck verify_balanced(const WeightedComplex& x);

/// Every face lies in a face of the next level up to the top.
bool is_pure(const WeightedComplex& x);
/// No face holds two vertices of the same type.
bool is_partite(const WeightedComplex& x);

/// Link X_f with balanced weights. The faces keep their global vertex ids.
struct LinkView {
  Face base;
  WeightedComplex complex;
};

/// Faces T \ f for T containing f. A face of global level m gets weight
/// w(T) / (C(|T|, |f|) * w(f)), which is w|/w(f) rescaled per level so the
/// link is balanced again. Throws std::invalid_argument if f is not a face.
LinkView link(const WeightedComplex& x, const Face& f);

/// 1-skeleton of a complex as a graph on its level-0 vertices (in level
/// order); `vertex_ids` receives the global id of each graph vertex.
WeightedGraph one_skeleton(const WeightedComplex& x, std::vector<std::uint32_t>* vertex_ids = nullptr);

/// X(G, {K_1, ..., K_d}) with its groups and coset tables.
struct CosetComplex {
  GroupParams params;
  std::shared_ptr<const GroupEnumeration> group;
  std::vector<std::shared_ptr<const GroupEnumeration>> subgroups;  // K_1..K_d
  std::vector<CosetTable> cosets;                                  // cosets of K_1..K_d in G
  std::vector<std::uint32_t> type_offsets;                          // global id of (type i, coset c) = offset[i-1] + c
  WeightedComplex complex;

  std::uint32_t vertex_id(std::uint32_t type, std::uint32_t coset) const { return type_offsets[type - 1] + coset; }
  std::uint32_t coset_id(std::uint32_t vertex) const;
  /// Vertex metadata: type and coset representative.
  VertexLabel vertex_label(std::uint32_t vertex) const;
};

struct BuildOptions {
  ClosureOptions closure;
  std::string cache_dir;  // empty: no disk cache
};

/// Top faces {gK_1, ..., gK_d} for g in G, deduplicated, uniform weights.
CosetComplex build_complex(const GroupParams& params, const BuildOptions& options = {});

/// The 1-dimensional coset complex X(K_S, {K_S ∩ K_a, K_S ∩ K_b}) for
/// S = [d] \ {a, b}, built from K_S alone.
struct LocalLink {
  GroupParams params;
  std::uint32_t type_a = 0;
  std::uint32_t type_b = 0;
  std::shared_ptr<const GroupEnumeration> h;    // K_S
  std::shared_ptr<const GroupEnumeration> h_a;  // K_S ∩ K_a
  std::shared_ptr<const GroupEnumeration> h_b;  // K_S ∩ K_b
  CosetTable cosets_a;
  CosetTable cosets_b;
  /// Vertices 0..|H/H_a|-1 are cosets of H_a, followed by the cosets of H_b.
  WeightedGraph graph;
};

LocalLink local_link(const GroupParams& params, std::uint32_t type_a, std::uint32_t type_b,
                     const ClosureOptions& options = {});

/// Bipartite 1-skeleton of the link of a face of type [d] \ {i, i+1}.
WeightedGraph local_link_graph(std::uint32_t p, std::uint32_t s, std::uint32_t d, std::uint32_t i,
                               const ClosureOptions& options = {});

/// Compares the 1-skeleton of the link of a level-(d-3) face with the local
/// construction through the coset bijection x K_j ∩ gK_S  <->  g^-1 x (K_S ∩ K_j).
/// Returns a description of the first mismatch, or nullopt.
std::optional<std::string> compare_link_with_local(const CosetComplex& cc, const Face& face, const LocalLink& local);

/// Checks that left translation by g^-1 maps the link of the type-`type`
/// vertex containing g onto the link of the vertex K_type. Returns the first
/// mismatch, or nullopt.
std::optional<std::string> compare_translated_links(const CosetComplex& cc, const RingMatrix& g, std::uint32_t type);

/// Face list export: "level;type-list;coset-id-list" per face. Only `level`
/// is written when given. Throws std::invalid_argument (and writes nothing)
/// when the selection is empty.
void write_face_list(const CosetComplex& cc, const std::string& path, std::optional<int> level = std::nullopt);

}  // namespace hdx

#endif  // HDX_COSET_COMPLEX_HPP_
