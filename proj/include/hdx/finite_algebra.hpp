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

#ifndef HDX_FINITE_ALGEBRA_HPP_
#define HDX_FINITE_ALGEBRA_HPP_

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hdx {

/// Largest supported characteristic. Coefficients are stored as bytes.
inline constexpr std::uint32_t kMaxPrime = 251;

bool is_prime(std::uint32_t n);

/// Arithmetic in F_p for a prime p <= kMaxPrime.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p_ - b) % p_; }
  std::uint32_t neg(std::uint32_t a) const { return (p_ - a) % p_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return (a * b) % p_; }
  std::uint32_t inv(std::uint32_t a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

/// Parameters of R = F_p[t]/<t^s>.
struct RingParams {
  std::uint32_t p = 2;
  std::uint32_t s = 1;

  /// Throws std::invalid_argument unless p is a supported prime and s >= 1.
  void validate() const;
  /// |R| = p^s, or 0 if it does not fit in 64 bits.
  std::uint64_t ring_size() const;

  friend bool operator==(const RingParams&, const RingParams&) = default;
};

/// Element of R = F_p[t]/<t^s>. Coefficient k multiplies t^k.
class TruncatedPoly {
 public:
  TruncatedPoly(RingParams params, std::vector<std::uint8_t> coeffs);

  static TruncatedPoly zero(RingParams params);
  static TruncatedPoly one(RingParams params);
  /// c0 + c1*t, truncated if s = 1.
  static TruncatedPoly linear(RingParams params, std::uint32_t c0, std::uint32_t c1);
  static TruncatedPoly constant(RingParams params, std::uint32_t c0);
  /// The ring element whose base-p digits (constant term least significant) are `index`.
  static TruncatedPoly from_index(RingParams params, std::uint64_t index);
  /// Parses the textual form produced by to_string().
  static TruncatedPoly parse(RingParams params, std::string_view text);

  const RingParams& params() const { return params_; }
  std::span<const std::uint8_t> coeffs() const { return coeffs_; }
  std::uint32_t coeff(std::size_t k) const { return coeffs_.at(k); }

  bool is_zero() const;
  /// Degree as a polynomial of degree < s; -1 for zero.
  int degree() const;
  std::uint64_t index() const;

  TruncatedPoly operator+(const TruncatedPoly& other) const;
  TruncatedPoly operator-(const TruncatedPoly& other) const;
  TruncatedPoly operator-() const;
  TruncatedPoly operator*(const TruncatedPoly& other) const;

  /// "c0+c1*t+c2*t^2", zero terms omitted, "0" for zero.
  std::string to_string() const;

  friend bool operator==(const TruncatedPoly& a, const TruncatedPoly& b) {
    return a.params_ == b.params_ && a.coeffs_ == b.coeffs_;
  }
  friend std::strong_ordering operator<=>(const TruncatedPoly& a, const TruncatedPoly& b) {
    return a.coeffs_ <=> b.coeffs_;
  }

 private:
  void require_same(const TruncatedPoly& other) const;

  RingParams params_;
  std::vector<std::uint8_t> coeffs_;
};

/// Monic polynomial over F_p; coefficients from the constant term up, leading 1 included.
using MonicPoly = std::vector<std::uint32_t>;

/// First monic irreducible of degree `deg` over F_p, enumerating candidates by
/// their integer encoding sum c_k p^k (the highest non-leading coefficient is
/// the most significant). Certified by trial division.
MonicPoly find_irreducible(std::uint32_t p, int deg);

/// True iff no monic polynomial of degree 1..deg-1 divides `poly`.
bool is_irreducible(std::uint32_t p, const MonicPoly& poly);

/// Remainder of `num` divided by the monic `den`, coefficients low to high.
std::vector<std::uint32_t> poly_mod(const PrimeField& field, std::vector<std::uint32_t> num,
                                    const MonicPoly& den);

std::string poly_to_string(const std::vector<std::uint32_t>& coeffs, char var);

/// F_q = F_p[y]/<mu(y)> with mu monic irreducible of degree m, q = p^m.
class ExtField {
 public:
  ExtField(std::uint32_t p, MonicPoly modulus);

  const PrimeField& base() const { return base_; }
  const MonicPoly& modulus() const { return modulus_; }
  int degree() const { return static_cast<int>(modulus_.size()) - 1; }
  std::uint64_t order() const { return order_; }

  friend bool operator==(const ExtField& a, const ExtField& b) {
    return a.base_ == b.base_ && a.modulus_ == b.modulus_;
  }

 private:
  PrimeField base_;
  MonicPoly modulus_;
  std::uint64_t order_;
};

/// Element of an extension field, coefficients of 1, y, ..., y^(m-1).
class ExtFieldElement {
 public:
  ExtFieldElement(std::shared_ptr<const ExtField> field, std::vector<std::uint32_t> coeffs);

  static ExtFieldElement zero(std::shared_ptr<const ExtField> field);
  static ExtFieldElement one(std::shared_ptr<const ExtField> field);
  /// Element with base-p digits `index`, constant coefficient least significant.
  static ExtFieldElement from_index(std::shared_ptr<const ExtField> field, std::uint64_t index);

  const ExtField& field() const { return *field_; }
  const std::vector<std::uint32_t>& coeffs() const { return coeffs_; }
  std::uint64_t index() const;
  bool is_zero() const;
  /// Degree as a polynomial in y; -1 for zero.
  int degree() const;

  ExtFieldElement operator+(const ExtFieldElement& other) const;
  ExtFieldElement operator-(const ExtFieldElement& other) const;
  ExtFieldElement operator-() const;
  ExtFieldElement operator*(const ExtFieldElement& other) const;

  std::string to_string() const;

  friend bool operator==(const ExtFieldElement& a, const ExtFieldElement& b) {
    return *a.field_ == *b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void require_same(const ExtFieldElement& other) const;

  std::shared_ptr<const ExtField> field_;
  std::vector<std::uint32_t> coeffs_;
};

}  // namespace hdx

#endif  // HDX_FINITE_ALGEBRA_HPP_
