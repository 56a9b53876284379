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

#include "hdx/affine_plane.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <stdexcept>

namespace hdx {
namespace {

// Id of (ell, Q) on one side of A: ell + p^2 * Q with base-p digits, constant term first.
std::uint32_t a_id(std::uint32_t p, std::array<std::uint32_t, 2> ell, std::array<std::uint32_t, 3> quad) {
  return ell[0] + p * ell[1] + p * p * (quad[0] + p * quad[1] + p * p * quad[2]);
}

TEST(AffinePlaneTest, CubicFieldTables) {
  const CubicField cf = make_cubic_field(2);
  ASSERT_EQ(cf.q, 8u);
  for (std::uint32_t a = 0; a < 8; ++a) {
    EXPECT_EQ(cf.add[a * 8 + a], 0u);
    EXPECT_EQ(cf.neg[a], a);
    EXPECT_EQ(cf.mul[a * 8 + 1], a);
    if (a != 0) {
      int inverses = 0;
      for (std::uint32_t b = 0; b < 8; ++b) inverses += cf.mul[a * 8 + b] == 1;
      EXPECT_EQ(inverses, 1);
    }
  }
}

TEST(AffinePlaneTest, BqShapeAndNeighbours) {
  const WeightedGraph g = build_bq(2);
  EXPECT_EQ(g.n(), 128u);
  EXPECT_EQ(g.edges().size(), 512u);
  for (std::uint32_t v = 0; v < g.n(); ++v) EXPECT_EQ(g.degree(v), 8u);
  // (0, b) ~ (c, d) iff d = -b = b in characteristic 2.
  for (std::uint32_t b = 0; b < 8; ++b) {
    for (std::uint32_t c = 0; c < 8; ++c) {
      for (std::uint32_t d = 0; d < 8; ++d) EXPECT_EQ(g.has_edge(b, 64 + c * 8 + d), d == b);
    }
  }
  EXPECT_EQ(g.labels().at(0).at("side"), "left");
  EXPECT_EQ(g.labels().at(64).at("side"), "right");
}

TEST(AffinePlaneTest, BqSpectrum) {
  const SpectralReport r = spectral_report(build_bq(2));
  EXPECT_NEAR(r.lambda_2, 1.0 / std::sqrt(8.0), 1e-10);
  EXPECT_NEAR(r.lambda_min, -1.0, 1e-10);
  const double allowed[] = {1.0, -1.0, 1.0 / std::sqrt(8.0), -1.0 / std::sqrt(8.0), 0.0};
  for (double x : r.spectrum) {
    double best = 1.0;
    for (double a : allowed) best = std::min(best, std::abs(x - a));
    EXPECT_LT(best, 1e-9) << x;
  }
  for (std::uint32_t p : {2u, 3u}) {
    const BqSpectrumCheck check = bq_spectrum_check(p);
    EXPECT_TRUE(check.ok()) << check.walk_mismatch << " " << check.max_spectrum_error;
    EXPECT_EQ(check.q, p * p * p);
  }
}

TEST(AffinePlaneTest, AShapeAndExampleEdge) {
  const WeightedGraph g = build_A(2);
  EXPECT_EQ(g.n(), 64u);
  for (std::uint32_t v = 0; v < g.n(); ++v) EXPECT_EQ(g.degree(v), 4u);
  // (t, t^2) ~ (t + 1, t): t(t + 1) = t^2 + t.
  EXPECT_TRUE(g.has_edge(a_id(2, {0, 1}, {0, 0, 1}), 32 + a_id(2, {1, 1}, {0, 1, 0})));
  EXPECT_FALSE(g.has_edge(a_id(2, {0, 1}, {0, 0, 1}), 32 + a_id(2, {1, 1}, {0, 0, 0})));
}

TEST(AffinePlaneTest, AMatchesBruteForce) {
  for (std::uint32_t p : {2u, 3u}) {
    const WeightedGraph g = build_A(p);
    const std::uint32_t side = p * p * p * p * p;
    ASSERT_EQ(g.n(), 2u * side);
    std::size_t edges = 0;
    auto digits = [p](std::uint32_t v, int k) {
      for (int i = 0; i < k; ++i) v /= p;
      return v % p;
    };
    for (std::uint32_t u = 0; u < side; ++u) {
      for (std::uint32_t v = 0; v < side; ++v) {
        // ell = digits 0,1; Q = digits 2,3,4.
        const std::uint32_t prod[3] = {digits(u, 0) * digits(v, 0), digits(u, 0) * digits(v, 1) + digits(u, 1) * digits(v, 0),
                                       digits(u, 1) * digits(v, 1)};
        bool adjacent = true;
        for (int k = 0; k < 3; ++k) adjacent = adjacent && (prod[k] % p) == (digits(u, 2 + k) + digits(v, 2 + k)) % p;
        ASSERT_EQ(g.has_edge(u, side + v), adjacent) << u << " " << v;
        edges += adjacent;
      }
    }
    EXPECT_EQ(edges, g.edges().size());
  }
}

TEST(AffinePlaneTest, InducedSubgraph) {
  for (std::uint32_t p : {2u, 3u}) {
    const InducedSubgraphCheck c = induced_subgraph_check(p);
    EXPECT_TRUE(c.ok) << c.mismatch;
    EXPECT_GT(c.pairs_compared, 0u);
  }
}

TEST(AffinePlaneTest, LinkBijection) {
  for (std::uint32_t p : {2u, 3u}) {
    const LinkBijectionCheck c = link_bijection_check(p, 3);
    EXPECT_TRUE(c.ok) << c.mismatch;
    EXPECT_EQ(c.left, static_cast<std::size_t>(p * p * p * p * p));
    EXPECT_EQ(c.right, static_cast<std::size_t>(p * p * p * p * p));
    EXPECT_EQ(c.edges, static_cast<std::size_t>(p * p * p * p * p * p * p));
  }
  EXPECT_THROW(link_bijection_check(2, 2), std::invalid_argument);
}

TEST(AffinePlaneTest, InducedEigenvalueBound) {
  EXPECT_NEAR(induced_eig_bound(4.0, 8.0, 1.0 / std::sqrt(8.0)), 2.0 / std::sqrt(8.0), 1e-12);
  EXPECT_NEAR(induced_eig_bound(5.0, 5.0, 0.3), 0.3, 1e-12);
  EXPECT_THROW(induced_eig_bound(9.0, 8.0, 0.1), std::invalid_argument);
  EXPECT_THROW(induced_eig_bound(0.0, 8.0, 0.1), std::invalid_argument);
}

}  // namespace
}  // namespace hdx
