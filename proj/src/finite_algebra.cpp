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

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <utility>

namespace hdx {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p) || p > kMaxPrime) {
    throw std::invalid_argument("characteristic must be a prime <= " + std::to_string(kMaxPrime) +
                                ", got " + std::to_string(p));
  }
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw std::domain_error("zero has no inverse in F_p");
  // Fermat: a^(p-2).
  std::uint32_t result = 1;
  std::uint32_t base = a % p_;
  for (std::uint32_t e = p_ - 2; e > 0; e >>= 1) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

void RingParams::validate() const {
  PrimeField{p};
  if (s < 1) throw std::invalid_argument("truncation length s must be >= 1");
}

std::uint64_t RingParams::ring_size() const {
  std::uint64_t size = 1;
  for (std::uint32_t k = 0; k < s; ++k) {
    if (size > UINT64_MAX / p) return 0;
    size *= p;
  }
  return size;
}

// ---------------------------------------------------------------------------
// TruncatedPoly

TruncatedPoly::TruncatedPoly(RingParams params, std::vector<std::uint8_t> coeffs)
    : params_(params), coeffs_(std::move(coeffs)) {
  params_.validate();
  if (coeffs_.size() != params_.s) {
    throw std::invalid_argument("TruncatedPoly needs exactly s coefficients");
  }
  for (auto c : coeffs_) {
    if (c >= params_.p) throw std::invalid_argument("TruncatedPoly coefficient not reduced mod p");
  }
}

TruncatedPoly TruncatedPoly::zero(RingParams params) {
  return TruncatedPoly(params, std::vector<std::uint8_t>(params.s, 0));
}

TruncatedPoly TruncatedPoly::one(RingParams params) { return constant(params, 1); }

TruncatedPoly TruncatedPoly::constant(RingParams params, std::uint32_t c0) {
  std::vector<std::uint8_t> coeffs(params.s, 0);
  coeffs[0] = static_cast<std::uint8_t>(c0 % params.p);
  return TruncatedPoly(params, std::move(coeffs));
}

TruncatedPoly TruncatedPoly::linear(RingParams params, std::uint32_t c0, std::uint32_t c1) {
  std::vector<std::uint8_t> coeffs(params.s, 0);
  coeffs[0] = static_cast<std::uint8_t>(c0 % params.p);
  if (params.s > 1) coeffs[1] = static_cast<std::uint8_t>(c1 % params.p);
  return TruncatedPoly(params, std::move(coeffs));
}

TruncatedPoly TruncatedPoly::from_index(RingParams params, std::uint64_t index) {
  std::vector<std::uint8_t> coeffs(params.s, 0);
  for (std::uint32_t k = 0; k < params.s; ++k) {
    coeffs[k] = static_cast<std::uint8_t>(index % params.p);
    index /= params.p;
  }
  return TruncatedPoly(params, std::move(coeffs));
}

TruncatedPoly TruncatedPoly::parse(RingParams params, std::string_view text) {
  std::vector<std::uint32_t> acc(params.s, 0);
  if (text == "0") return zero(params);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t plus = text.find('+', pos);
    std::string_view term = text.substr(pos, plus == std::string_view::npos ? text.npos : plus - pos);
    std::uint32_t coeff = 0;
    std::size_t power = 0;
    auto star = term.find('*');
    std::string_view coeff_text = term.substr(0, star);
    auto [ptr, ec] = std::from_chars(coeff_text.data(), coeff_text.data() + coeff_text.size(), coeff);
    if (ec != std::errc{} || ptr != coeff_text.data() + coeff_text.size()) {
      throw std::invalid_argument("bad TruncatedPoly term '" + std::string(term) + "'");
    }
    if (star != std::string_view::npos) {
      std::string_view var = term.substr(star + 1);
      if (var == "t") {
        power = 1;
      } else if (var.size() > 2 && var.substr(0, 2) == "t^") {
        std::string_view digits = var.substr(2);
        auto res = std::from_chars(digits.data(), digits.data() + digits.size(), power);
        if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size()) {
          throw std::invalid_argument("bad exponent in '" + std::string(term) + "'");
        }
      } else {
        throw std::invalid_argument("bad TruncatedPoly term '" + std::string(term) + "'");
      }
    }
    if (power >= params.s || coeff >= params.p) {
      throw std::invalid_argument("term '" + std::string(term) + "' out of range for R");
    }
    acc[power] = (acc[power] + coeff) % params.p;
    if (plus == std::string_view::npos) break;
    pos = plus + 1;
  }
  std::vector<std::uint8_t> coeffs(acc.begin(), acc.end());
  return TruncatedPoly(params, std::move(coeffs));
}

bool TruncatedPoly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](auto c) { return c == 0; });
}

int TruncatedPoly::degree() const {
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
    if (coeffs_[k] != 0) return k;
  }
  return -1;
}

std::uint64_t TruncatedPoly::index() const {
  std::uint64_t index = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) index = index * params_.p + *it;
  return index;
}

void TruncatedPoly::require_same(const TruncatedPoly& other) const {
  if (!(params_ == other.params_)) {
    throw std::invalid_argument("TruncatedPoly operands live in different rings");
  }
}

TruncatedPoly TruncatedPoly::operator+(const TruncatedPoly& other) const {
  require_same(other);
  std::vector<std::uint8_t> out(coeffs_.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = static_cast<std::uint8_t>((coeffs_[k] + other.coeffs_[k]) % params_.p);
  }
  return TruncatedPoly(params_, std::move(out));
}

TruncatedPoly TruncatedPoly::operator-() const {
  std::vector<std::uint8_t> out(coeffs_.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = static_cast<std::uint8_t>((params_.p - coeffs_[k]) % params_.p);
  }
  return TruncatedPoly(params_, std::move(out));
}

TruncatedPoly TruncatedPoly::operator-(const TruncatedPoly& other) const { return *this + (-other); }

TruncatedPoly TruncatedPoly::operator*(const TruncatedPoly& other) const {
  require_same(other);
  const std::size_t s = coeffs_.size();
  std::vector<std::uint32_t> acc(s, 0);
  for (std::size_t i = 0; i < s; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j < s; ++j) {
      acc[i + j] = (acc[i + j] + std::uint32_t{coeffs_[i]} * other.coeffs_[j]) % params_.p;
    }
  }
  std::vector<std::uint8_t> out(acc.begin(), acc.end());
  return TruncatedPoly(params_, std::move(out));
}

std::string TruncatedPoly::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    if (!out.empty()) out += '+';
    out += std::to_string(coeffs_[k]);
    if (k == 1) out += "*t";
    if (k > 1) out += "*t^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p and irreducibility

namespace {

void trim(std::vector<std::uint32_t>& poly) {
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
}

// Monic polynomial of degree `deg` whose non-leading coefficients are the
// base-p digits of `code`, constant term least significant.
MonicPoly monic_from_code(std::uint32_t p, int deg, std::uint64_t code) {
  MonicPoly poly(deg + 1, 0);
  for (int k = 0; k < deg; ++k) {
    poly[k] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  poly[deg] = 1;
  return poly;
}

std::uint64_t int_pow(std::uint64_t base, int exp) {
  std::uint64_t result = 1;
  for (int k = 0; k < exp; ++k) result *= base;
  return result;
}

}  // namespace

std::vector<std::uint32_t> poly_mod(const PrimeField& field, std::vector<std::uint32_t> num,
                                    const MonicPoly& den) {
  const std::size_t m = den.size() - 1;
  trim(num);
  while (num.size() > m) {
    const std::uint32_t lead = num.back();
    const std::size_t shift = num.size() - 1 - m;
    for (std::size_t k = 0; k <= m; ++k) {
      num[shift + k] = field.sub(num[shift + k], field.mul(lead, den[k]));
    }
    trim(num);
  }
  num.resize(m, 0);
  return num;
}

bool is_irreducible(std::uint32_t p, const MonicPoly& poly) {
  const PrimeField field(p);
  const int deg = static_cast<int>(poly.size()) - 1;
  if (deg < 1 || poly.back() != 1) throw std::invalid_argument("is_irreducible expects a monic polynomial");
  for (int divisor_deg = 1; divisor_deg < deg; ++divisor_deg) {
    const std::uint64_t count = int_pow(p, divisor_deg);
    for (std::uint64_t code = 0; code < count; ++code) {
      auto rem = poly_mod(field, poly, monic_from_code(p, divisor_deg, code));
      if (std::all_of(rem.begin(), rem.end(), [](auto c) { return c == 0; })) return false;
    }
  }
  return true;
}

MonicPoly find_irreducible(std::uint32_t p, int deg) {
  PrimeField{p};
  if (deg < 1) throw std::invalid_argument("find_irreducible needs deg >= 1");
  const std::uint64_t count = int_pow(p, deg);
  for (std::uint64_t code = 0; code < count; ++code) {
    MonicPoly candidate = monic_from_code(p, deg, code);
    if (is_irreducible(p, candidate)) return candidate;
  }
  throw std::logic_error("no irreducible polynomial found");
}

std::string poly_to_string(const std::vector<std::uint32_t>& coeffs, char var) {
  std::string out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    if (!out.empty()) out += '+';
    out += std::to_string(coeffs[k]);
    if (k == 1) out += std::string("*") + var;
    if (k > 1) out += std::string("*") + var + "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Extension field

ExtField::ExtField(std::uint32_t p, MonicPoly modulus) : base_(p), modulus_(std::move(modulus)) {
  if (!is_irreducible(p, modulus_)) {
    throw std::invalid_argument("extension modulus " + poly_to_string(modulus_, 'y') +
                                " is not irreducible over F_" + std::to_string(p));
  }
  order_ = int_pow(p, degree());
}

ExtFieldElement::ExtFieldElement(std::shared_ptr<const ExtField> field, std::vector<std::uint32_t> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (!field_) throw std::invalid_argument("ExtFieldElement needs a field");
  if (static_cast<int>(coeffs_.size()) != field_->degree()) {
    throw std::invalid_argument("ExtFieldElement needs exactly deg(mu) coefficients");
  }
  for (auto c : coeffs_) {
    if (c >= field_->base().p()) throw std::invalid_argument("ExtFieldElement coefficient not reduced");
  }
}

ExtFieldElement ExtFieldElement::zero(std::shared_ptr<const ExtField> field) {
  const auto m = static_cast<std::size_t>(field->degree());
  return ExtFieldElement(std::move(field), std::vector<std::uint32_t>(m, 0));
}

ExtFieldElement ExtFieldElement::one(std::shared_ptr<const ExtField> field) {
  std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(field->degree()), 0);
  coeffs[0] = 1;
  return ExtFieldElement(std::move(field), std::move(coeffs));
}

ExtFieldElement ExtFieldElement::from_index(std::shared_ptr<const ExtField> field, std::uint64_t index) {
  const std::uint32_t p = field->base().p();
  std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(field->degree()), 0);
  for (auto& c : coeffs) {
    c = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  return ExtFieldElement(std::move(field), std::move(coeffs));
}

std::uint64_t ExtFieldElement::index() const {
  std::uint64_t index = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) index = index * field_->base().p() + *it;
  return index;
}

bool ExtFieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](auto c) { return c == 0; });
}

int ExtFieldElement::degree() const {
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
    if (coeffs_[k] != 0) return k;
  }
  return -1;
}

void ExtFieldElement::require_same(const ExtFieldElement& other) const {
  if (!(*field_ == *other.field_)) throw std::invalid_argument("extension field modulus mismatch");
}

ExtFieldElement ExtFieldElement::operator+(const ExtFieldElement& other) const {
  require_same(other);
  const auto& f = field_->base();
  std::vector<std::uint32_t> out(coeffs_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = f.add(coeffs_[k], other.coeffs_[k]);
  return ExtFieldElement(field_, std::move(out));
}

ExtFieldElement ExtFieldElement::operator-() const {
  const auto& f = field_->base();
  std::vector<std::uint32_t> out(coeffs_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = f.neg(coeffs_[k]);
  return ExtFieldElement(field_, std::move(out));
}

ExtFieldElement ExtFieldElement::operator-(const ExtFieldElement& other) const { return *this + (-other); }

ExtFieldElement ExtFieldElement::operator*(const ExtFieldElement& other) const {
  require_same(other);
  const auto& f = field_->base();
  std::vector<std::uint32_t> prod(2 * coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      prod[i + j] = f.add(prod[i + j], f.mul(coeffs_[i], other.coeffs_[j]));
    }
  }
  return ExtFieldElement(field_, poly_mod(f, std::move(prod), field_->modulus()));
}

std::string ExtFieldElement::to_string() const { return poly_to_string(coeffs_, 'y'); }

}  // namespace hdx
