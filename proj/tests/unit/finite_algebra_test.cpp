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

#include "hdx/finite_algebra.hpp"

#include <gtest/gtest.h>

#include <set>
#include <stdexcept>

namespace hdx {
namespace {

// Oracle: schoolbook product of coefficient vectors, then drop powers >= s.
std::vector<std::uint8_t> naive_product(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b,
                                        std::uint32_t p) {
  std::vector<std::uint32_t> full(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) full[i + j] += a[i] * b[j];
  }
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = static_cast<std::uint8_t>(full[k] % p);
  return out;
}

std::vector<std::uint8_t> to_vec(const TruncatedPoly& x) { return {x.coeffs().begin(), x.coeffs().end()}; }

TEST(PrimeFieldTest, PrimalityMatchesTrialDivision) {
  for (std::uint32_t n = 0; n < 300; ++n) {
    bool prime = n >= 2;
    for (std::uint32_t k = 2; k < n; ++k) prime = prime && n % k != 0;
    EXPECT_EQ(is_prime(n), prime) << n;
  }
}

TEST(PrimeFieldTest, InversesAndRejects) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 251u}) {
    const PrimeField f(p);
    for (std::uint32_t a = 1; a < p; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    EXPECT_THROW(f.inv(0), std::domain_error);
  }
  EXPECT_THROW(PrimeField(4), std::invalid_argument);
  EXPECT_THROW(PrimeField(257), std::invalid_argument);
}

TEST(TruncatedPolyTest, MultiplicationMatchesSchoolbookOracle) {
  for (RingParams rp : {RingParams{2, 3}, RingParams{3, 2}, RingParams{5, 2}}) {
    const std::uint64_t n = rp.ring_size();
    for (std::uint64_t i = 0; i < n; ++i) {
      for (std::uint64_t j = 0; j < n; ++j) {
        const auto a = TruncatedPoly::from_index(rp, i);
        const auto b = TruncatedPoly::from_index(rp, j);
        EXPECT_EQ(to_vec(a * b), naive_product(to_vec(a), to_vec(b), rp.p));
      }
    }
  }
}

TEST(TruncatedPolyTest, RingAxiomsExhaustive) {
  const RingParams rp{3, 2};
  const std::uint64_t n = rp.ring_size();
  const auto zero = TruncatedPoly::zero(rp);
  const auto one = TruncatedPoly::one(rp);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto a = TruncatedPoly::from_index(rp, i);
    EXPECT_EQ(a + zero, a);
    EXPECT_EQ(a * one, a);
    EXPECT_EQ(a + (-a), zero);
    for (std::uint64_t j = 0; j < n; ++j) {
      const auto b = TruncatedPoly::from_index(rp, j);
      EXPECT_EQ(a * b, b * a);
      for (std::uint64_t k = 0; k < n; ++k) {
        const auto c = TruncatedPoly::from_index(rp, k);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
      }
    }
  }
}

TEST(TruncatedPolyTest, TruncationKillsTToTheS) {
  for (std::uint32_t s = 1; s <= 4; ++s) {
    const RingParams rp{2, s};
    auto power = TruncatedPoly::one(rp);
    const auto t = TruncatedPoly::linear(rp, 0, 1);
    for (std::uint32_t k = 0; k < s; ++k) {
      EXPECT_FALSE(power.is_zero());
      power = power * t;
    }
    EXPECT_TRUE(power.is_zero());
  }
}

TEST(TruncatedPolyTest, IndexAndTextRoundTrip) {
  const RingParams rp{3, 3};
  std::set<std::string> texts;
  for (std::uint64_t i = 0; i < rp.ring_size(); ++i) {
    const auto a = TruncatedPoly::from_index(rp, i);
    EXPECT_EQ(a.index(), i);
    EXPECT_EQ(TruncatedPoly::parse(rp, a.to_string()), a);
    texts.insert(a.to_string());
  }
  EXPECT_EQ(texts.size(), rp.ring_size());
  EXPECT_EQ(TruncatedPoly::linear(rp, 1, 2).to_string(), "1+2*t");
  EXPECT_EQ(TruncatedPoly::zero(rp).to_string(), "0");
  EXPECT_EQ(TruncatedPoly::from_index(rp, 9).degree(), 2);
  EXPECT_EQ(TruncatedPoly::zero(rp).degree(), -1);
}

TEST(TruncatedPolyTest, RejectsMixedRingsAndBadInput) {
  const auto a = TruncatedPoly::one({2, 2});
  const auto b = TruncatedPoly::one({3, 2});
  EXPECT_THROW(a + b, std::invalid_argument);
  EXPECT_THROW(a * TruncatedPoly::one({2, 3}), std::invalid_argument);
  EXPECT_THROW(TruncatedPoly::parse({2, 2}, "1*t^2"), std::invalid_argument);
  EXPECT_THROW(TruncatedPoly(RingParams{2, 2}, {2, 0}), std::invalid_argument);
  EXPECT_THROW((RingParams{6, 1}).validate(), std::invalid_argument);
  EXPECT_THROW((RingParams{2, 0}).validate(), std::invalid_argument);
}

// Oracle for cubics: irreducible iff no root in F_p.
bool cubic_has_root(std::uint32_t p, const MonicPoly& f) {
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t k = f.size(); k-- > 0;) acc = (acc * x + f[k]) % p;
    if (acc == 0) return true;
  }
  return false;
}

TEST(IrreducibleTest, FirstCubicsAreTheExpectedOnes) {
  EXPECT_EQ(find_irreducible(2, 3), (MonicPoly{1, 1, 0, 1}));
  EXPECT_EQ(find_irreducible(3, 3), (MonicPoly{1, 2, 0, 1}));
  EXPECT_EQ(poly_to_string(find_irreducible(2, 3), 'y'), "1+1*y+1*y^3");
}

TEST(IrreducibleTest, CubicIrreducibilityAgreesWithRootTest) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    int irreducible = 0;
    for (std::uint32_t c0 = 0; c0 < p; ++c0) {
      for (std::uint32_t c1 = 0; c1 < p; ++c1) {
        for (std::uint32_t c2 = 0; c2 < p; ++c2) {
          const MonicPoly f{c0, c1, c2, 1};
          EXPECT_EQ(is_irreducible(p, f), !cubic_has_root(p, f));
          irreducible += is_irreducible(p, f) ? 1 : 0;
        }
      }
    }
    // (p^3 - p) / 3 monic irreducible cubics.
    EXPECT_EQ(irreducible, static_cast<int>((p * p * p - p) / 3));
  }
}

TEST(ExtFieldTest, EveryNonzeroElementIsInvertibleAndFrobeniusFixes) {
  for (std::uint32_t p : {2u, 3u}) {
    auto field = std::make_shared<const ExtField>(p, find_irreducible(p, 3));
    const std::uint64_t q = field->order();
    EXPECT_EQ(q, std::uint64_t{p} * p * p);
    for (std::uint64_t i = 0; i < q; ++i) {
      const auto a = ExtFieldElement::from_index(field, i);
      EXPECT_EQ(a.index(), i);
      auto power = a;
      for (std::uint64_t k = 1; k < q; ++k) power = power * a;
      EXPECT_EQ(power, a) << "a^q != a for " << a.to_string();
      if (i == 0) continue;
      int inverses = 0;
      for (std::uint64_t j = 1; j < q; ++j) {
        if (a * ExtFieldElement::from_index(field, j) == ExtFieldElement::one(field)) ++inverses;
      }
      EXPECT_EQ(inverses, 1);
    }
  }
}

TEST(ExtFieldTest, RejectsReducibleModulusAndMixedFields) {
  EXPECT_THROW(ExtField(2, MonicPoly{1, 0, 0, 1}), std::invalid_argument);
  auto f1 = std::make_shared<const ExtField>(2, MonicPoly{1, 1, 0, 1});
  auto f2 = std::make_shared<const ExtField>(2, MonicPoly{1, 0, 1, 1});
  EXPECT_THROW(ExtFieldElement::one(f1) + ExtFieldElement::one(f2), std::invalid_argument);
}

}  // namespace
}  // namespace hdx
