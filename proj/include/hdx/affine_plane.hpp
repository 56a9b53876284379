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

#ifndef HDX_AFFINE_PLANE_HPP_
#define HDX_AFFINE_PLANE_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hdx/coset_complex.hpp"
#include "hdx/finite_algebra.hpp"
#include "hdx/spectral.hpp"
#include "hdx/weighted_graph.hpp"

namespace hdx {

/// F_q for q = p^3 with the modulus from find_irreducible(p, 3), plus its
/// multiplication table indexed by ExtFieldElement::index().
struct CubicField {
  std::shared_ptr<const ExtField> field;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> add;  // add[a * q + b]
  std::vector<std::uint32_t> mul;  // mul[a * q + b]
  std::vector<std::uint32_t> neg;
};

CubicField make_cubic_field(std::uint32_t p);

/// Lines-points graph on F_q x F_q + F_q x F_q, q = p^3: (a, b) ~ (c, d) iff
/// ac = b + d. Left vertex (a, b) has id a*q + b, right vertex (c, d) has id
/// q^2 + c*q + d (field elements by index).
WeightedGraph build_bq(std::uint32_t p);

struct BqSpectrumCheck {
  std::uint32_t q = 0;
  bool walks_ok = false;
  std::string walk_mismatch;
  bool spectrum_ok = false;
  double max_spectrum_error = 0.0;
  SpectralReport report;
  bool ok() const { return walks_ok && spectrum_ok; }
};

/// Checks the length-2 walk counts (q on the diagonal, 1 when the first
/// coordinates differ, 0 otherwise) on both sides and compares the normalized
/// spectrum with +-1, +-1/sqrt(q) (multiplicity q^2 - q each) and 0
/// (multiplicity 2(q - 1)) within `tol`.
BqSpectrumCheck bq_spectrum_check(std::uint32_t p, double tol = 1e-9, const SpectralOptions& options = {});

/// Pairs (ell, Q) with deg(ell) <= 1 and deg(Q) <= 2 over F_p. Id of a pair
/// is ell_index + p^2 * Q_index (coefficients base p, constant term first);
/// right vertices are offset by p^5. Adjacent iff ell1 * ell2 = Q1 + Q2 as
/// polynomials. Labels carry side, ell and Q.
WeightedGraph build_A(std::uint32_t p);

struct InducedSubgraphCheck {
  bool ok = false;
  std::size_t pairs_compared = 0;
  std::string mismatch;
};

/// Compares A with the subgraph of B_q induced on first coordinates of
/// degree <= 1, through t -> y.
InducedSubgraphCheck induced_subgraph_check(std::uint32_t p);

struct LinkBijectionCheck {
  bool ok = false;
  std::string mismatch;
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t edges = 0;
};

/// Maps the consecutive-pair link over F_p[t]/<t^s> (s >= 3) onto A: a coset
/// of <e_23> goes to (ell, -Q) read off its M_2 representative, a coset of
/// <e_12> to (ell, Q) read off its M_1 representative. Checks the map is a
/// bijection and preserves edges both ways. Throws std::invalid_argument for
/// s < 3.
LinkBijectionCheck link_bijection_check(std::uint32_t p, std::uint32_t s, const ClosureOptions& options = {});

/// D * lambda(Y) / d for an induced d-regular subgraph of a D-regular graph.
double induced_eig_bound(double d_sub, double d_super, double lambda_super);

}  // namespace hdx

#endif  // HDX_AFFINE_PLANE_HPP_
