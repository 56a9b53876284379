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

#include "hdx/matrix_group.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <set>
#include <stdexcept>

#include "hdx/errors.hpp"

namespace hdx {
namespace {

GroupParams gp(std::uint32_t p, std::uint32_t s, std::uint32_t d) { return GroupParams{RingParams{p, s}, d}; }

TruncatedPoly lin(const GroupParams& g, std::uint32_t c0, std::uint32_t c1) {
  return TruncatedPoly::linear(g.ring, c0, c1);
}

TEST(ElementaryTest, WrapsIndicesCyclically) {
  const auto g = gp(3, 2, 3);
  const auto r = lin(g, 1, 2);
  const RingMatrix e = elementary(3, 4, r, 3);
  EXPECT_EQ(e.entry(2, 0), r);
  EXPECT_EQ(e, elementary(3, 1, r, 3));
  EXPECT_TRUE(elementary(1, 2, TruncatedPoly::zero(g.ring), 3).is_identity());
  EXPECT_THROW(elementary(1, 4, r, 3), std::invalid_argument);
  EXPECT_THROW(elementary(2, 2, r, 3), std::invalid_argument);
}

TEST(ElementaryTest, ProductsAndInverses) {
  const auto g = gp(2, 2, 3);
  const auto t = lin(g, 0, 1);
  const auto one = TruncatedPoly::one(g.ring);
  EXPECT_EQ(elementary(1, 2, t, 3) * elementary(1, 2, one, 3), elementary(1, 2, t + one, 3));
  EXPECT_TRUE((elementary(1, 2, t, 3) * elementary(1, 2, t, 3)).is_identity());
  const auto g3 = gp(3, 3, 3);
  const auto t3 = lin(g3, 0, 1);
  EXPECT_EQ((elementary(1, 2, t3, 3) * elementary(2, 3, t3, 3)).entry(0, 2), t3 * t3);

  const RingMatrix a = elementary(1, 2, t, 3) * elementary(2, 3, one, 3);
  EXPECT_EQ(mat_inv(a), elementary(2, 3, one, 3) * elementary(1, 2, t, 3));
  EXPECT_TRUE(mat_inv(RingMatrix::identity(g)).is_identity());
  EXPECT_EQ(mat_inv(elementary(3, 1, t, 3)), elementary(3, 1, -t, 3));
}

TEST(MatrixTest, InverseOfNonunitDeterminantThrows) {
  const auto g = gp(2, 2, 2);
  std::vector<TruncatedPoly> entries(4, TruncatedPoly::zero(g.ring));
  entries[0] = lin(g, 0, 1);  // det = t
  entries[3] = TruncatedPoly::one(g.ring);
  const RingMatrix m = RingMatrix::from_entries(g, entries);
  EXPECT_EQ(determinant(m), lin(g, 0, 1));
  EXPECT_THROW(mat_inv(m), SingularMatrixError);
  // Unit but not 1: det = 1 + t.
  entries[0] = lin(g, 1, 1);
  const RingMatrix u = RingMatrix::from_entries(g, entries);
  EXPECT_TRUE((u * mat_inv(u)).is_identity());
  EXPECT_TRUE((mat_inv(u) * u).is_identity());
}

TEST(MatrixTest, TextRoundTrip) {
  const auto g = gp(3, 2, 3);
  const RingMatrix a = elementary(1, 2, lin(g, 2, 1), 3) * elementary(3, 1, lin(g, 1, 1), 3);
  EXPECT_EQ(RingMatrix::parse(g, a.to_string()), a);
}

TEST(CommutatorTest, SpecExamples) {
  const auto g = gp(3, 3, 4);
  const auto r1 = lin(g, 1, 2);
  const auto r2 = lin(g, 2, 1);
  EXPECT_EQ(commutator(elementary(1, 2, r1, 4), elementary(2, 3, r2, 4)), elementary(1, 3, r1 * r2, 4));
  EXPECT_TRUE(commutator(elementary(1, 2, r1, 4), elementary(3, 4, r2, 4)).is_identity());
  const RingMatrix a = elementary(1, 2, r1, 4) * elementary(4, 1, r2, 4);
  EXPECT_TRUE(commutator(a, a).is_identity());
}

TEST(CommutatorTest, LawsHoldExhaustively) {
  for (const auto& g : {gp(2, 2, 3), gp(3, 2, 3), gp(2, 3, 4), gp(3, 1, 4)}) {
    const CommutatorLawReport r = check_commutator_laws(g, 3);
    EXPECT_TRUE(r.ok()) << g.to_string() << ": " << r.failure.value_or("");
    EXPECT_GT(r.sum_checked, 0u);
    EXPECT_GT(r.product_checked, 0u);
    EXPECT_GT(r.chain_checked, 0u);
  }
}

TEST(CommutatorTest, JNotEqualKWithIEqualLIsNotTheIdentity) {
  // [e_12(1), e_31(1)] = e_32(-1) for d = 3.
  const auto g = gp(3, 1, 3);
  const auto one = TruncatedPoly::one(g.ring);
  EXPECT_EQ(commutator(elementary(1, 2, one, 3), elementary(3, 1, one, 3)), elementary(3, 2, -one, 3));
  EXPECT_GT(check_commutator_laws(g, 2).nontrivial_when_j_ne_k, 0u);
}

TEST(ClosureTest, KnownOrders) {
  EXPECT_EQ(bfs_closure(k_generators(gp(2, 1, 3), {})).order(), 168u);
  EXPECT_EQ(bfs_closure(k_generators(gp(2, 1, 2), {})).order(), 6u);
  EXPECT_EQ(bfs_closure(k_generators(gp(3, 1, 2), {})).order(), 24u);
  EXPECT_EQ(bfs_closure(k_generators(gp(2, 2, 3), {})).order(), 43008u);
  EXPECT_EQ(bfs_closure(k_generators(gp(2, 2, 3), IndexSet{1})).order(), 64u);
  EXPECT_EQ(bfs_closure(k_generators(gp(2, 2, 3), IndexSet::all(3))).order(), 1u);
}

TEST(ClosureTest, ParallelMatchesSerialAndBruteForce) {
  for (const auto& g : {gp(2, 1, 2), gp(2, 1, 3), gp(3, 1, 2), gp(2, 2, 3)}) {
    const auto gens = k_generators(g, {});
    const GroupEnumeration par = bfs_closure(gens);
    const GroupEnumeration ser = bfs_closure_serial(gens);
    EXPECT_EQ(par.elements(), ser.elements()) << g.to_string();
    EXPECT_EQ(par.elements(), special_linear_bruteforce(g).elements()) << g.to_string();
  }
}

TEST(ClosureTest, CapAndGuards) {
  ClosureOptions small;
  small.cap = 100;
  EXPECT_THROW(bfs_closure(k_generators(gp(2, 1, 3), {}), small), InfeasibleError);
  EXPECT_THROW(bfs_closure_serial(k_generators(gp(2, 1, 3), {}), small), InfeasibleError);
  ClosureOptions big;
  big.cap = kDefaultClosureCap + 1;
  EXPECT_THROW(bfs_closure(k_generators(gp(2, 1, 2), {}), big), InfeasibleError);
  big.allow_large_cap = true;
  EXPECT_EQ(bfs_closure(k_generators(gp(2, 1, 2), {}), big).order(), 6u);
  EXPECT_THROW(special_linear_bruteforce(gp(2, 4, 3)), InfeasibleError);
}

// Oracle: count of matrices matching the explicit description, computed
// independently of ks_membership.
std::uint64_t explicit_count(std::uint32_t p, std::uint32_t s, std::uint32_t d, IndexSet set) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t j = 0; j < d; ++j) {
      if (i == j) continue;
      std::uint32_t dist = 0;
      bool ok = true;
      for (std::uint32_t k = i; k != j; k = (k + 1) % d) {
        ok = ok && !set.contains(k + 1);
        ++dist;
      }
      if (!ok) continue;
      for (std::uint32_t c = 0; c < std::min(dist, s - 1) + 1; ++c) count *= p;
    }
  }
  return count;
}

TEST(KsTest, ClosureEqualsExplicitDescription) {
  for (std::uint32_t p : {2u, 3u}) {
    for (std::uint32_t s : {2u, 3u}) {
      const auto g = gp(p, s, 3);
      for (std::uint32_t mask = 1; mask < 8; ++mask) {
        const IndexSet set = IndexSet::from_mask(mask);
        const GroupEnumeration k = bfs_closure(k_generators(g, set));
        EXPECT_EQ(k.order(), explicit_count(p, s, 3, set)) << g.to_string() << " " << set.to_string();
        for (const auto& m : k.elements()) ASSERT_TRUE(ks_membership(set, m));
      }
    }
  }
}

TEST(KsTest, IntersectionProperty) {
  for (std::uint32_t p : {2u, 3u}) {
    for (std::uint32_t s : {2u, 3u}) {
      const auto g = gp(p, s, 3);
      std::vector<GroupEnumeration> singles;
      for (std::uint32_t i = 1; i <= 3; ++i) singles.push_back(bfs_closure(k_generators(g, IndexSet{i})));
      for (std::uint32_t mask = 3; mask < 8; ++mask) {
        const IndexSet set = IndexSet::from_mask(mask);
        if (set.size() < 2) continue;
        std::optional<GroupEnumeration> meet;
        for (auto i : set.members()) meet = meet ? intersect(*meet, singles[i - 1], "m") : singles[i - 1];
        EXPECT_EQ(meet->elements(), bfs_closure(k_generators(g, set)).elements());
      }
    }
  }
}

TEST(KsTest, MembershipExamples) {
  const auto g = gp(3, 3, 3);
  EXPECT_TRUE(ks_membership(IndexSet{1}, RingMatrix::identity(g)));
  std::vector<TruncatedPoly> e(9, TruncatedPoly::zero(g.ring));
  for (int i = 0; i < 3; ++i) e[4 * i] = TruncatedPoly::one(g.ring);
  e[1] = lin(g, 1, 1);
  e[5] = lin(g, 2, 1);
  e[2] = TruncatedPoly::from_index(g.ring, 18);  // 2*t^2
  EXPECT_TRUE(ks_membership(IndexSet{3}, RingMatrix::from_entries(g, e)));
  EXPECT_FALSE(ks_membership(IndexSet{2}, RingMatrix::from_entries(g, e)));
}

TEST(CosetTest, CountsAndPartition) {
  const auto g = gp(2, 2, 3);
  auto G = std::make_shared<const GroupEnumeration>(bfs_closure(k_generators(g, {})));
  auto K1 = std::make_shared<const GroupEnumeration>(bfs_closure(k_generators(g, IndexSet{1})));
  const CosetTable table = enumerate_cosets(G, K1);
  EXPECT_EQ(table.size(), 672u);
  std::vector<std::size_t> sizes(table.size(), 0);
  for (std::size_t i = 0; i < G->order(); ++i) ++sizes[table.coset_of_index(i)];
  for (auto sz : sizes) EXPECT_EQ(sz, 64u);
  // Representatives are the smallest keys of their cosets.
  for (std::size_t c = 0; c < table.size(); ++c) {
    for (const auto& k : K1->elements()) EXPECT_LE(table.representative(c).key(), (table.representative(c) * k).key());
  }
  auto id = std::make_shared<const GroupEnumeration>(bfs_closure(k_generators(g, IndexSet::all(3))));
  EXPECT_EQ(enumerate_cosets(G, id).size(), G->order());
  EXPECT_EQ(enumerate_cosets(G, G).size(), 1u);
  EXPECT_THROW(enumerate_cosets(K1, G), std::invalid_argument);
}

TEST(CosetTest, IntersectionMatchesSetScan) {
  const auto g = gp(2, 2, 3);
  const GroupEnumeration K1 = bfs_closure(k_generators(g, IndexSet{1}));
  const GroupEnumeration K2 = bfs_closure(k_generators(g, IndexSet{2}));
  const auto G = bfs_closure(k_generators(g, {}));
  auto coset = [](const RingMatrix& x, const GroupEnumeration& k) {
    std::set<std::string> out;
    for (const auto& m : k.elements()) out.insert((x * m).key());
    return out;
  };
  for (std::size_t i = 0; i < G.order(); i += 997) {
    const RingMatrix& x = G.element(i);
    for (std::size_t j = 0; j < G.order(); j += 1009) {
      const RingMatrix& y = G.element(j);
      const auto a = coset(x, K1);
      const auto b = coset(y, K2);
      bool meet = false;
      for (const auto& key : a) meet = meet || b.count(key);
      EXPECT_EQ(coset_intersects(x, K1, y, K2), meet);
    }
  }
  const RingMatrix e12t = elementary(1, 2, lin(g, 0, 1), 3);
  EXPECT_TRUE(coset_intersects(e12t, K1, e12t, K2));
}

TEST(GroupCacheTest, RoundTripsAndKeysByVersion) {
  const auto dir = std::filesystem::temp_directory_path() / "hdx_group_cache_test";
  std::filesystem::remove_all(dir);
  const GroupCache cache(dir.string());
  const auto g = gp(2, 2, 3);
  EXPECT_FALSE(cache.has(g, "K_{1}"));
  const auto k1 = cache.k_group(g, IndexSet{1}, {});
  EXPECT_TRUE(cache.has(g, "K_{1}"));
  EXPECT_NE(cache.path_for(g, "K_{1}").find("_v1"), std::string::npos);
  const auto again = cache.load(g, "K_{1}");
  ASSERT_TRUE(again.has_value());
  EXPECT_EQ(again->elements(), k1->elements());
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace hdx
