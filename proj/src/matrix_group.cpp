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

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_set>
#include <utility>

#include "hdx/errors.hpp"

namespace hdx {

void GroupParams::validate() const {
  ring.validate();
  if (d < 2 || d > 16) throw std::invalid_argument("matrix dimension d must lie in [2, 16]");
}

std::string GroupParams::to_string() const {
  return "p=" + std::to_string(ring.p) + ",s=" + std::to_string(ring.s) + ",d=" + std::to_string(d);
}

// ---------------------------------------------------------------------------
// IndexSet

IndexSet::IndexSet(std::initializer_list<std::uint32_t> indices) {
  for (auto i : indices) *this = with(i);
}

IndexSet IndexSet::all(std::uint32_t d) { return from_mask(d >= 32 ? ~0u : (1u << d) - 1); }

IndexSet IndexSet::with(std::uint32_t i) const {
  if (i < 1 || i > 32) throw std::invalid_argument("index out of range for IndexSet");
  return from_mask(mask_ | (1u << (i - 1)));
}

std::uint32_t IndexSet::size() const { return static_cast<std::uint32_t>(std::popcount(mask_)); }

std::vector<std::uint32_t> IndexSet::members() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 1; i <= 32; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string IndexSet::to_string() const {
  std::string out = "{";
  for (auto i : members()) {
    if (out.size() > 1) out += ',';
    out += std::to_string(i);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// RingMatrix

RingMatrix::RingMatrix(GroupParams params, std::string bytes) : params_(params), bytes_(std::move(bytes)) {
  if (bytes_.size() != static_cast<std::size_t>(params_.d) * params_.d * params_.ring.s) {
    throw std::invalid_argument("RingMatrix byte string has the wrong length");
  }
}

RingMatrix RingMatrix::zero(GroupParams params) {
  params.validate();
  return RingMatrix(params, std::string(static_cast<std::size_t>(params.d) * params.d * params.ring.s, '\0'));
}

RingMatrix RingMatrix::identity(GroupParams params) {
  RingMatrix m = zero(params);
  for (std::uint32_t i = 0; i < params.d; ++i) m.bytes_[m.offset(i, i)] = 1;
  return m;
}

RingMatrix RingMatrix::from_entries(GroupParams params, const std::vector<TruncatedPoly>& row_major) {
  RingMatrix m = zero(params);
  if (row_major.size() != static_cast<std::size_t>(params.d) * params.d) {
    throw std::invalid_argument("from_entries needs d*d entries");
  }
  for (std::uint32_t i = 0; i < params.d; ++i) {
    for (std::uint32_t j = 0; j < params.d; ++j) m.set_entry(i, j, row_major[i * params.d + j]);
  }
  return m;
}

TruncatedPoly RingMatrix::entry(std::uint32_t row, std::uint32_t col) const {
  auto c = entry_coeffs(row, col);
  return TruncatedPoly(params_.ring, std::vector<std::uint8_t>(c.begin(), c.end()));
}

std::span<const std::uint8_t> RingMatrix::entry_coeffs(std::uint32_t row, std::uint32_t col) const {
  if (row >= params_.d || col >= params_.d) throw std::out_of_range("RingMatrix entry out of range");
  return {reinterpret_cast<const std::uint8_t*>(bytes_.data()) + offset(row, col), params_.ring.s};
}

void RingMatrix::set_entry(std::uint32_t row, std::uint32_t col, const TruncatedPoly& value) {
  if (!(value.params() == params_.ring)) throw std::invalid_argument("entry lives in a different ring");
  if (row >= params_.d || col >= params_.d) throw std::out_of_range("RingMatrix entry out of range");
  auto c = value.coeffs();
  std::copy(c.begin(), c.end(), bytes_.begin() + static_cast<std::ptrdiff_t>(offset(row, col)));
}

bool RingMatrix::is_identity() const { return *this == identity(params_); }

std::string RingMatrix::to_string() const {
  std::string out;
  for (std::uint32_t i = 0; i < params_.d; ++i) {
    for (std::uint32_t j = 0; j < params_.d; ++j) {
      if (i + j > 0) out += '|';
      out += entry(i, j).to_string();
    }
  }
  return out;
}

RingMatrix RingMatrix::parse(GroupParams params, std::string_view line) {
  std::vector<TruncatedPoly> entries;
  std::size_t pos = 0;
  while (true) {
    auto bar = line.find('|', pos);
    entries.push_back(TruncatedPoly::parse(params.ring, line.substr(pos, bar == line.npos ? line.npos : bar - pos)));
    if (bar == line.npos) break;
    pos = bar + 1;
  }
  return from_entries(params, entries);
}

// ---------------------------------------------------------------------------
// Arithmetic

RingMatrix elementary(std::int64_t i, std::int64_t j, const TruncatedPoly& r, std::uint32_t d) {
  const auto wrap = [d](std::int64_t k) {
    const auto dd = static_cast<std::int64_t>(d);
    return static_cast<std::uint32_t>(((k - 1) % dd + dd) % dd);
  };
  const std::uint32_t row = wrap(i);
  const std::uint32_t col = wrap(j);
  if (row == col) {
    throw std::invalid_argument("elementary matrix needs i != j mod d (got " + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
  }
  GroupParams params{r.params(), d};
  RingMatrix m = RingMatrix::identity(params);
  m.set_entry(row, col, r);
  return m;
}

namespace {

void require_same(const RingMatrix& a, const RingMatrix& b) {
  if (!(a.params() == b.params())) throw std::invalid_argument("matrix parameter mismatch");
}

// acc += x * y truncated to s terms; values are reduced later.
inline void mul_acc(std::uint32_t* acc, const std::uint8_t* x, const std::uint8_t* y, std::uint32_t s) {
  for (std::uint32_t u = 0; u < s; ++u) {
    if (x[u] == 0) continue;
    const std::uint32_t xu = x[u];
    for (std::uint32_t v = 0; u + v < s; ++v) acc[u + v] += xu * y[v];
  }
}

// Raw polynomial in R used by the determinant and adjugate.
using Raw = std::vector<std::uint32_t>;

Raw raw_mul(const Raw& x, const Raw& y, std::uint32_t p) {
  Raw out(x.size(), 0);
  for (std::size_t u = 0; u < x.size(); ++u) {
    if (x[u] == 0) continue;
    for (std::size_t v = 0; u + v < x.size(); ++v) out[u + v] = (out[u + v] + x[u] * y[v]) % p;
  }
  return out;
}

Raw raw_entry(const RingMatrix& a, std::uint32_t i, std::uint32_t j) {
  auto c = a.entry_coeffs(i, j);
  return Raw(c.begin(), c.end());
}

// Determinant of the submatrix on the given rows and columns (Leibniz).
Raw sub_determinant(const RingMatrix& a, const std::vector<std::uint32_t>& rows,
                    const std::vector<std::uint32_t>& cols) {
  const std::uint32_t p = a.params().ring.p;
  const std::uint32_t s = a.params().ring.s;
  const std::size_t n = rows.size();
  Raw total(s, 0);
  if (n == 0) {
    total[0] = 1;
    return total;
  }
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  do {
    std::size_t inversions = 0;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) inversions += perm[x] > perm[y];
    }
    Raw term(s, 0);
    term[0] = 1;
    bool zero = false;
    for (std::size_t r = 0; r < n && !zero; ++r) {
      Raw e = raw_entry(a, rows[r], cols[perm[r]]);
      if (std::all_of(e.begin(), e.end(), [](auto c) { return c == 0; })) zero = true;
      else term = raw_mul(term, e, p);
    }
    if (zero) continue;
    for (std::uint32_t k = 0; k < s; ++k) {
      total[k] = (inversions % 2 == 0) ? (total[k] + term[k]) % p : (total[k] + p - term[k]) % p;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

TruncatedPoly to_poly(const RingParams& ring, const Raw& raw) {
  return TruncatedPoly(ring, std::vector<std::uint8_t>(raw.begin(), raw.end()));
}

// Inverse of a unit of R by exhaustive search, memoised per (p, s, element).
TruncatedPoly unit_inverse(const TruncatedPoly& u) {
  static std::mutex mutex;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>, std::uint64_t> cache;
  const auto& ring = u.params();
  const auto key = std::make_tuple(ring.p, ring.s, u.index());
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return TruncatedPoly::from_index(ring, it->second);
  }
  const TruncatedPoly one = TruncatedPoly::one(ring);
  const std::uint64_t size = ring.ring_size();
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    TruncatedPoly candidate = TruncatedPoly::from_index(ring, idx);
    if (u * candidate == one) {
      std::lock_guard lock(mutex);
      cache.emplace(key, idx);
      return candidate;
    }
  }
  throw SingularMatrixError("determinant " + u.to_string() + " is not a unit of R");
}

}  // namespace

RingMatrix mat_mul(const RingMatrix& a, const RingMatrix& b) {
  require_same(a, b);
  const std::uint32_t d = a.dim();
  const std::uint32_t s = a.params().ring.s;
  const std::uint32_t p = a.params().ring.p;
  const auto* x = reinterpret_cast<const std::uint8_t*>(a.key().data());
  const auto* y = reinterpret_cast<const std::uint8_t*>(b.key().data());
  std::string out(a.key().size(), '\0');
  std::vector<std::uint32_t> acc(s);
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t j = 0; j < d; ++j) {
      std::fill(acc.begin(), acc.end(), 0u);
      for (std::uint32_t k = 0; k < d; ++k) {
        mul_acc(acc.data(), x + (i * d + k) * s, y + (k * d + j) * s, s);
      }
      for (std::uint32_t u = 0; u < s; ++u) out[(i * d + j) * s + u] = static_cast<char>(acc[u] % p);
    }
  }
  return RingMatrix(a.params(), std::move(out));
}

TruncatedPoly determinant(const RingMatrix& a) {
  std::vector<std::uint32_t> all(a.dim());
  std::iota(all.begin(), all.end(), 0u);
  return to_poly(a.params().ring, sub_determinant(a, all, all));
}

RingMatrix mat_inv(const RingMatrix& a) {
  const auto& params = a.params();
  const std::uint32_t d = a.dim();
  const std::uint32_t p = params.ring.p;
  const TruncatedPoly det = determinant(a);
  if (det.coeff(0) == 0) throw SingularMatrixError("determinant " + det.to_string() + " is not a unit of R");
  const bool det_is_one = det == TruncatedPoly::one(params.ring);
  const TruncatedPoly det_inv = det_is_one ? det : unit_inverse(det);

  RingMatrix out = RingMatrix::zero(params);
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t j = 0; j < d; ++j) {
      // inverse(i, j) = (-1)^(i+j) det(minor without row j, column i) / det
      std::vector<std::uint32_t> rows;
      std::vector<std::uint32_t> cols;
      for (std::uint32_t r = 0; r < d; ++r) {
        if (r != j) rows.push_back(r);
        if (r != i) cols.push_back(r);
      }
      Raw cof = sub_determinant(a, rows, cols);
      if ((i + j) % 2 == 1) {
        for (auto& c : cof) c = (p - c) % p;
      }
      TruncatedPoly value = to_poly(params.ring, cof);
      out.set_entry(i, j, det_is_one ? value : value * det_inv);
    }
  }
  return out;
}

RingMatrix commutator(const RingMatrix& a, const RingMatrix& b) {
  return mat_inv(a) * mat_inv(b) * a * b;
}

CommutatorLawReport check_commutator_laws(const GroupParams& params, int max_chain) {
  params.validate();
  const std::uint32_t d = params.d;
  const RingParams ring = params.ring;
  std::vector<TruncatedPoly> values;
  for (std::uint32_t a = 0; a < (ring.s > 1 ? ring.p : 1); ++a) {
    for (std::uint32_t b = 0; b < ring.p; ++b) values.push_back(TruncatedPoly::linear(ring, b, a));
  }
  const RingMatrix id = RingMatrix::identity(params);
  CommutatorLawReport report;
  auto fail = [&](std::string what) {
    if (!report.failure) report.failure = std::move(what);
  };
  auto pair_name = [](std::uint32_t i, std::uint32_t j) { return std::to_string(i) + "," + std::to_string(j); };

  for (std::uint32_t i = 1; i <= d && !report.failure; ++i) {
    for (std::uint32_t j = 1; j <= d; ++j) {
      if (i == j) continue;
      for (const auto& r1 : values) {
        for (const auto& r2 : values) {
          ++report.sum_checked;
          if (elementary(i, j, r1, d) * elementary(i, j, r2, d) != elementary(i, j, r1 + r2, d)) {
            fail("sum rule fails at e_{" + pair_name(i, j) + "}(" + r1.to_string() + "), (" + r2.to_string() + ")");
          }
        }
      }
    }
  }
  if (report.failure) return report;

  for (std::uint32_t i = 1; i <= d; ++i) {
    for (std::uint32_t j = 1; j <= d; ++j) {
      for (std::uint32_t k = 1; k <= d; ++k) {
        for (std::uint32_t l = 1; l <= d; ++l) {
          if (i == j || k == l || (j == k && i == l)) continue;
          for (const auto& r1 : values) {
            for (const auto& r2 : values) {
              ++report.product_checked;
              const RingMatrix c = commutator(elementary(i, j, r1, d), elementary(k, l, r2, d));
              RingMatrix expected = id;
              if (j == k) {
                expected = elementary(i, l, r1 * r2, d);
              } else if (i == l) {
                expected = elementary(k, j, -(r1 * r2), d);
                if (!c.is_identity()) ++report.nontrivial_when_j_ne_k;
              }
              if (c != expected) {
                fail("product rule fails at [e_{" + pair_name(i, j) + "}(" + r1.to_string() + "), e_{" +
                     pair_name(k, l) + "}(" + r2.to_string() + ")]");
                return report;
              }
            }
          }
        }
      }
    }
  }

  // Chains i_1 -> ... -> i_{m+1}: consecutive indices differ and no index
  // before the last equals the last.
  for (int m = 2; m <= max_chain; ++m) {
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(m) + 1, 1);
    std::vector<std::size_t> val(static_cast<std::size_t>(m), 0);
    const auto total_idx = static_cast<std::size_t>(std::pow(d, m + 1));
    for (std::size_t code = 0; code < total_idx; ++code) {
      std::size_t c = code;
      for (auto& x : idx) {
        x = static_cast<std::uint32_t>(c % d) + 1;
        c /= d;
      }
      bool valid = true;
      for (int k = 0; k < m && valid; ++k) {
        valid = idx[k] != idx[k + 1] && idx[k] != idx[m];
      }
      if (!valid) continue;
      const auto total_val = static_cast<std::size_t>(std::pow(values.size(), m));
      for (std::size_t vcode = 0; vcode < total_val; ++vcode) {
        std::size_t v = vcode;
        for (auto& x : val) {
          x = v % values.size();
          v /= values.size();
        }
        RingMatrix nested = elementary(idx[m - 1], idx[m], values[val[m - 1]], d);
        TruncatedPoly product = values[val[m - 1]];
        for (int k = m - 2; k >= 0; --k) {
          nested = commutator(elementary(idx[k], idx[k + 1], values[val[k]], d), nested);
          product = values[val[k]] * product;
        }
        ++report.chain_checked;
        if (nested != elementary(idx[0], idx[m], product, d)) {
          std::string chain;
          for (auto x : idx) chain += (chain.empty() ? "" : "->") + std::to_string(x);
          fail("chained commutator fails along " + chain);
          return report;
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Generators and closure

std::string k_label(IndexSet excluded) { return excluded.empty() ? "G" : "K_" + excluded.to_string(); }

GeneratorSet k_generators(const GroupParams& params, IndexSet excluded) {
  params.validate();
  GeneratorSet out{k_label(excluded), {}, params};
  std::unordered_set<std::string> seen;
  const std::uint32_t p = params.ring.p;
  for (std::uint32_t j = 1; j <= params.d; ++j) {
    if (excluded.contains(j)) continue;
    for (std::uint32_t a = 0; a < p; ++a) {
      for (std::uint32_t b = 0; b < p; ++b) {
        TruncatedPoly r = TruncatedPoly::linear(params.ring, b, a);
        if (r.is_zero()) continue;
        RingMatrix e = elementary(j, j + 1, r, params.d);
        if (seen.insert(e.key()).second) out.generators.push_back(std::move(e));
      }
    }
  }
  return out;
}

GroupEnumeration::GroupEnumeration(GroupParams params, std::string label, std::vector<RingMatrix> elements)
    : params_(params), label_(std::move(label)), elements_(std::move(elements)) {
  for (const auto& m : elements_) {
    if (!(m.params() == params_)) throw std::invalid_argument("group element parameter mismatch");
  }
  std::sort(elements_.begin(), elements_.end(),
            [](const RingMatrix& x, const RingMatrix& y) { return x.key() < y.key(); });
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    index_.emplace(elements_[i].key(), static_cast<std::uint32_t>(i));
  }
}

std::optional<std::size_t> GroupEnumeration::index_of(const RingMatrix& m) const {
  if (!(m.params() == params_)) return std::nullopt;
  auto it = index_.find(m.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void GroupEnumeration::verify_group_axioms() const {
  if (!contains(RingMatrix::identity(params_))) {
    throw std::logic_error(label_ + ": enumeration does not contain the identity");
  }
  for (const auto& m : elements_) {
    if (!contains(mat_inv(m))) throw std::logic_error(label_ + ": enumeration is not closed under inverses");
  }
}

namespace {

void check_cap(const ClosureOptions& options) {
  if (options.cap > kDefaultClosureCap && !options.allow_large_cap) {
    throw InfeasibleError("closure cap " + std::to_string(options.cap) + " exceeds the default " +
                          std::to_string(kDefaultClosureCap) + " without the large-cap override");
  }
}

[[noreturn]] void cap_exceeded(const GeneratorSet& gens, const ClosureOptions& options) {
  throw InfeasibleError("closure of " + gens.label + " exceeded the element cap " + std::to_string(options.cap));
}

GroupParams closure_params(const GeneratorSet& gens) {
  if (!gens.generators.empty()) return gens.generators.front().params();
  if (gens.params) return *gens.params;
  throw std::invalid_argument("closure of an empty generator set needs explicit parameters");
}

GroupEnumeration finish(const GeneratorSet& gens, std::vector<RingMatrix> elements, const ClosureOptions& options) {
  GroupEnumeration group(closure_params(gens), gens.label, std::move(elements));
  if (options.verify_axioms) group.verify_group_axioms();
  return group;
}

}  // namespace

GroupEnumeration bfs_closure_serial(const GeneratorSet& gens, const ClosureOptions& options) {
  check_cap(options);
  const GroupParams params = closure_params(gens);
  std::vector<RingMatrix> elements{RingMatrix::identity(params)};
  std::unordered_set<std::string> seen{elements.front().key()};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : gens.generators) {
      RingMatrix next = elements[head] * g;
      if (seen.insert(next.key()).second) {
        elements.push_back(std::move(next));
        if (elements.size() > options.cap) cap_exceeded(gens, options);
      }
    }
  }
  return finish(gens, std::move(elements), options);
}

GroupEnumeration bfs_closure(const GeneratorSet& gens, const ClosureOptions& options) {
  check_cap(options);
  const GroupParams params = closure_params(gens);
  std::vector<RingMatrix> elements{RingMatrix::identity(params)};
  std::unordered_set<std::string> seen{elements.front().key()};
  std::size_t level_begin = 0;
  while (level_begin < elements.size()) {
    const std::size_t level_end = elements.size();
    const auto frontier = static_cast<std::int64_t>(level_end - level_begin);
    std::vector<std::vector<RingMatrix>> found(static_cast<std::size_t>(omp_get_max_threads()));
    // `seen` is only read inside the parallel region.
#pragma omp parallel
    {
      auto& local = found[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
      for (std::int64_t f = 0; f < frontier; ++f) {
        const RingMatrix& x = elements[level_begin + static_cast<std::size_t>(f)];
        for (const auto& g : gens.generators) {
          RingMatrix next = x * g;
          if (!seen.contains(next.key())) local.push_back(std::move(next));
        }
      }
    }
    for (auto& local : found) {
      for (auto& next : local) {
        if (seen.insert(next.key()).second) {
          elements.push_back(std::move(next));
          if (elements.size() > options.cap) cap_exceeded(gens, options);
        }
      }
    }
    level_begin = level_end;
  }
  return finish(gens, std::move(elements), options);
}

bool ks_membership(IndexSet s_set, const RingMatrix& a) {
  const std::uint32_t d = a.dim();
  const std::uint32_t s = a.params().ring.s;
  for (std::uint32_t i = 1; i <= d; ++i) {
    for (std::uint32_t j = 1; j <= d; ++j) {
      auto c = a.entry_coeffs(i - 1, j - 1);
      if (i == j) {
        if (c[0] != 1) return false;
        for (std::uint32_t k = 1; k < s; ++k) {
          if (c[k] != 0) return false;
        }
        continue;
      }
      const std::uint32_t dist = (j + d - i) % d;
      bool meets = false;
      for (std::uint32_t step = 0; step < dist; ++step) {
        meets = meets || s_set.contains((i - 1 + step) % d + 1);
      }
      const std::uint32_t cap = meets ? 0 : std::min(dist + 1, s);
      for (std::uint32_t k = cap; k < s; ++k) {
        if (c[k] != 0) return false;
      }
    }
  }
  return true;
}

GroupEnumeration special_linear_bruteforce(const GroupParams& params) {
  params.validate();
  const std::uint64_t digits = static_cast<std::uint64_t>(params.d) * params.d * params.ring.s;
  std::uint64_t total = 1;
  for (std::uint64_t k = 0; k < digits; ++k) {
    total *= params.ring.p;
    if (total > (std::uint64_t{1} << 30)) {
      throw InfeasibleError("brute-force SL_d enumeration needs p^(s*d^2) <= 2^30 matrices; " +
                            params.to_string() + " exceeds it");
    }
  }
  const TruncatedPoly one = TruncatedPoly::one(params.ring);
  std::vector<RingMatrix> found;
  std::string bytes(digits, '\0');
  for (std::uint64_t n = 0; n < total; ++n) {
    RingMatrix candidate(params, bytes);
    if (determinant(candidate) == one) found.push_back(std::move(candidate));
    for (std::size_t pos = digits; pos-- > 0;) {
      auto& byte = reinterpret_cast<std::uint8_t&>(bytes[pos]);
      if (++byte < params.ring.p) break;
      byte = 0;
    }
  }
  return GroupEnumeration(params, "SL_bruteforce", std::move(found));
}

GroupEnumeration intersect(const GroupEnumeration& a, const GroupEnumeration& b, std::string label) {
  if (!(a.params() == b.params())) throw std::invalid_argument("intersect: parameter mismatch");
  std::vector<RingMatrix> common;
  for (const auto& m : a.elements()) {
    if (b.contains(m)) common.push_back(m);
  }
  return GroupEnumeration(a.params(), std::move(label), std::move(common));
}

// ---------------------------------------------------------------------------
// Cosets

CosetTable::CosetTable(std::shared_ptr<const GroupEnumeration> ambient,
                       std::shared_ptr<const GroupEnumeration> subgroup)
    : ambient_(std::move(ambient)), subgroup_(std::move(subgroup)) {
  for (const auto& k : subgroup_->elements()) {
    if (!ambient_->contains(k)) {
      throw std::invalid_argument(subgroup_->label() + " is not contained in " + ambient_->label());
    }
  }
  constexpr auto kUnassigned = static_cast<std::uint32_t>(-1);
  coset_of_.assign(ambient_->order(), kUnassigned);
  // Elements are visited in key order, so the first unassigned member of a
  // coset is its lexicographic minimum.
  for (std::size_t g = 0; g < ambient_->order(); ++g) {
    if (coset_of_[g] != kUnassigned) continue;
    const auto id = static_cast<std::uint32_t>(representatives_.size());
    representatives_.push_back(static_cast<std::uint32_t>(g));
    for (const auto& k : subgroup_->elements()) {
      auto idx = ambient_->index_of(ambient_->element(g) * k);
      if (!idx) throw std::logic_error(ambient_->label() + " is not closed under right multiplication by " + subgroup_->label());
      if (coset_of_[*idx] != kUnassigned && coset_of_[*idx] != id) {
        throw std::logic_error("coset partition is inconsistent");
      }
      coset_of_[*idx] = id;
    }
  }
}

std::uint32_t CosetTable::coset_of(const RingMatrix& m) const {
  auto idx = ambient_->index_of(m);
  if (!idx) throw std::invalid_argument("matrix is not an element of " + ambient_->label());
  return coset_of_[*idx];
}

CosetTable enumerate_cosets(std::shared_ptr<const GroupEnumeration> g, std::shared_ptr<const GroupEnumeration> k) {
  return CosetTable(std::move(g), std::move(k));
}

bool coset_intersects(const RingMatrix& g1, const GroupEnumeration& k1, const RingMatrix& g2,
                      const GroupEnumeration& k2) {
  const RingMatrix x = mat_inv(g1) * g2;
  for (const auto& k : k1.elements()) {
    if (k2.contains(mat_inv(k) * x)) return true;
  }
  return false;
}

}  // namespace hdx
