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

#ifndef HDX_MATRIX_GROUP_HPP_
#define HDX_MATRIX_GROUP_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hdx/finite_algebra.hpp"

namespace hdx {

/// (p, s, d): d x d matrices over F_p[t]/<t^s>.
struct GroupParams {
  RingParams ring;
  std::uint32_t d = 3;

  void validate() const;
  std::string to_string() const;

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

/// Subset of [d] = {1, ..., d}, stored as a bitmask (bit i-1 for index i).
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::uint32_t> indices);

  static IndexSet all(std::uint32_t d);
  static IndexSet from_mask(std::uint32_t mask) {
    IndexSet set;
    set.mask_ = mask;
    return set;
  }

  bool contains(std::uint32_t i) const { return i >= 1 && i <= 32 && (mask_ >> (i - 1)) & 1u; }
  IndexSet with(std::uint32_t i) const;
  bool empty() const { return mask_ == 0; }
  std::uint32_t size() const;
  std::uint32_t mask() const { return mask_; }
  std::vector<std::uint32_t> members() const;
  /// "{1,3}".
  std::string to_string() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::uint32_t mask_ = 0;
};

/// d x d matrix over R. Entries are stored row-major, s coefficient bytes per
/// entry; that byte string is also the canonical serialization key.
class RingMatrix {
 public:
  RingMatrix(GroupParams params, std::string bytes);

  static RingMatrix identity(GroupParams params);
  static RingMatrix zero(GroupParams params);
  static RingMatrix from_entries(GroupParams params, const std::vector<TruncatedPoly>& row_major);

  const GroupParams& params() const { return params_; }
  std::uint32_t dim() const { return params_.d; }

  /// 0-based row and column.
  TruncatedPoly entry(std::uint32_t row, std::uint32_t col) const;
  std::span<const std::uint8_t> entry_coeffs(std::uint32_t row, std::uint32_t col) const;
  void set_entry(std::uint32_t row, std::uint32_t col, const TruncatedPoly& value);

  const std::string& key() const { return bytes_; }
  bool is_identity() const;

  /// Row-major entries in TruncatedPoly textual form joined by '|'.
  std::string to_string() const;
  static RingMatrix parse(GroupParams params, std::string_view line);

  friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
    return a.params_ == b.params_ && a.bytes_ == b.bytes_;
  }

 private:
  std::size_t offset(std::uint32_t row, std::uint32_t col) const {
    return (static_cast<std::size_t>(row) * params_.d + col) * params_.ring.s;
  }

  GroupParams params_;
  std::string bytes_;
};

/// e_{i,j}(r) with 1-based indices reduced cyclically into [1, d]. Throws
/// std::invalid_argument when i and j coincide mod d.
RingMatrix elementary(std::int64_t i, std::int64_t j, const TruncatedPoly& r, std::uint32_t d);

RingMatrix mat_mul(const RingMatrix& a, const RingMatrix& b);
inline RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) { return mat_mul(a, b); }

/// Leibniz expansion over R.
TruncatedPoly determinant(const RingMatrix& a);

/// Thrown by mat_inv when det(A) is not a unit of R.
class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adjugate divided by the determinant. The determinant's inverse is found by
/// exhaustive search over R (skipped when det = 1).
RingMatrix mat_inv(const RingMatrix& a);

/// [a, b] = a^-1 b^-1 a b.
RingMatrix commutator(const RingMatrix& a, const RingMatrix& b);

/// Exhaustive check of the elementary-matrix laws over r = at + b:
///   sum:     e_ij(r1) e_ij(r2) = e_ij(r1 + r2);
///   product: [e_ij(r1), e_kl(r2)] = e_il(r1 r2) if j = k, i != l;
///            id if j != k, i != l; e_kj(-r1 r2) if j != k, i = l;
///   chains:  nested commutators along i_1 -> ... -> i_{m+1} give
///            e_{i_1, i_{m+1}}(r_1 ... r_m), for m <= max_chain.
struct CommutatorLawReport {
  std::size_t sum_checked = 0;
  std::size_t product_checked = 0;
  std::size_t chain_checked = 0;
  /// Pairs with j != k and i = l, where the commutator is not the identity.
  std::size_t nontrivial_when_j_ne_k = 0;
  std::optional<std::string> failure;
  bool ok() const { return !failure.has_value(); }
};

CommutatorLawReport check_commutator_laws(const GroupParams& params, int max_chain = 3);

struct GeneratorSet {
  std::string label;
  std::vector<RingMatrix> generators;
  /// Needed only when `generators` is empty; the closure is then {I}.
  std::optional<GroupParams> params;
};

/// Generators e_{j,j+1}(at + b), a, b in F_p, for every j in [d] \ S. Zero
/// entries are skipped, so the set is closed under inverses. S = {} gives G.
GeneratorSet k_generators(const GroupParams& params, IndexSet excluded);

/// Label used for caches and reports: "G" for the empty set, "K_{1,3}" otherwise.
std::string k_label(IndexSet excluded);

/// A finite matrix group, elements sorted by serialization key.
class GroupEnumeration {
 public:
  GroupEnumeration(GroupParams params, std::string label, std::vector<RingMatrix> elements);

  const GroupParams& params() const { return params_; }
  const std::string& label() const { return label_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<RingMatrix>& elements() const { return elements_; }
  const RingMatrix& element(std::size_t index) const { return elements_[index]; }

  std::optional<std::size_t> index_of(const RingMatrix& m) const;
  bool contains(const RingMatrix& m) const { return index_of(m).has_value(); }

  /// Throws std::logic_error unless the identity is present and every
  /// element's inverse is present.
  void verify_group_axioms() const;

 private:
  GroupParams params_;
  std::string label_;
  std::vector<RingMatrix> elements_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

inline constexpr std::size_t kDefaultClosureCap = std::size_t{1} << 25;

struct ClosureOptions {
  std::size_t cap = kDefaultClosureCap;
  /// Required for caps above kDefaultClosureCap.
  bool allow_large_cap = false;
  bool verify_axioms = true;
};

/// Breadth-first closure under right multiplication by the generators. The
/// frontier expansion of each level runs in parallel; the result is sorted so
/// it does not depend on thread scheduling. Throws InfeasibleError when the
/// order exceeds the cap.
GroupEnumeration bfs_closure(const GeneratorSet& gens, const ClosureOptions& options = {});

/// Single-threaded queue-based closure with identical semantics.
GroupEnumeration bfs_closure_serial(const GeneratorSet& gens, const ClosureOptions& options = {});

/// Explicit membership test for K_S (S nonempty): unit diagonal, zero at
/// (i, j) whenever the cyclic interval {i, ..., j-1} meets S, otherwise an
/// entry of degree <= min(cyclic distance from i to j, s - 1).
bool ks_membership(IndexSet s_set, const RingMatrix& a);

/// All d x d matrices over R with determinant 1. Throws InfeasibleError when
/// p^(s d^2) exceeds 2^30.
GroupEnumeration special_linear_bruteforce(const GroupParams& params);

/// Set intersection of two enumerations of the same parameters.
GroupEnumeration intersect(const GroupEnumeration& a, const GroupEnumeration& b, std::string label);

/// Left cosets gK of a subgroup, representatives are lexicographic minima and
/// coset ids follow representative order.
class CosetTable {
 public:
  CosetTable(std::shared_ptr<const GroupEnumeration> ambient,
             std::shared_ptr<const GroupEnumeration> subgroup);

  const GroupEnumeration& ambient() const { return *ambient_; }
  const GroupEnumeration& subgroup() const { return *subgroup_; }
  std::size_t size() const { return representatives_.size(); }
  const RingMatrix& representative(std::size_t coset) const { return ambient_->element(representatives_[coset]); }
  std::uint32_t coset_of_index(std::size_t ambient_index) const { return coset_of_[ambient_index]; }
  /// Throws std::invalid_argument if m is not in the ambient group.
  std::uint32_t coset_of(const RingMatrix& m) const;

 private:
  std::shared_ptr<const GroupEnumeration> ambient_;
  std::shared_ptr<const GroupEnumeration> subgroup_;
  std::vector<std::uint32_t> representatives_;
  std::vector<std::uint32_t> coset_of_;
};

/// Throws std::invalid_argument unless K is a subset of G.
CosetTable enumerate_cosets(std::shared_ptr<const GroupEnumeration> g,
                            std::shared_ptr<const GroupEnumeration> k);

/// g1 K1 and g2 K2 intersect iff g1^-1 g2 lies in K1 K2.
bool coset_intersects(const RingMatrix& g1, const GroupEnumeration& k1, const RingMatrix& g2,
                      const GroupEnumeration& k2);

// Group dumps: one matrix per line in RingMatrix::to_string() form.
void write_group_dump(const std::string& path, const GroupEnumeration& group);
GroupEnumeration read_group_dump(const std::string& path, const GroupParams& params, const std::string& label);

/// On-disk cache of closures keyed by (p, s, d, label, format version). Files
/// are written to a temporary name and renamed into place.
class GroupCache {
 public:
  explicit GroupCache(std::string directory) : directory_(std::move(directory)) {}

  std::string path_for(const GroupParams& params, const std::string& label) const;
  bool has(const GroupParams& params, const std::string& label) const;
  std::optional<GroupEnumeration> load(const GroupParams& params, const std::string& label) const;
  void store(const GroupEnumeration& group) const;

  /// Loads K_S (or G for S = {}) from the cache, computing and storing it on a miss.
  std::shared_ptr<const GroupEnumeration> k_group(const GroupParams& params, IndexSet excluded,
                                                  const ClosureOptions& options) const;

  const std::string& directory() const { return directory_; }

 private:
  std::string directory_;
};

inline constexpr int kCacheFormatVersion = 1;

}  // namespace hdx

#endif  // HDX_MATRIX_GROUP_HPP_
