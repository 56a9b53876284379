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

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace hdx {

CubicField make_cubic_field(std::uint32_t p) {
  CubicField cf;
  cf.field = std::make_shared<const ExtField>(p, find_irreducible(p, 3));
  cf.q = p * p * p;
  const std::uint32_t q = cf.q;
  cf.add.resize(static_cast<std::size_t>(q) * q);
  cf.mul.resize(static_cast<std::size_t>(q) * q);
  cf.neg.resize(q);
  std::vector<ExtFieldElement> elems;
  elems.reserve(q);
  for (std::uint32_t a = 0; a < q; ++a) elems.push_back(ExtFieldElement::from_index(cf.field, a));
  for (std::uint32_t a = 0; a < q; ++a) {
    cf.neg[a] = static_cast<std::uint32_t>((-elems[a]).index());
    for (std::uint32_t b = 0; b < q; ++b) {
      cf.add[static_cast<std::size_t>(a) * q + b] = static_cast<std::uint32_t>((elems[a] + elems[b]).index());
      cf.mul[static_cast<std::size_t>(a) * q + b] = static_cast<std::uint32_t>((elems[a] * elems[b]).index());
    }
  }
  return cf;
}

namespace {

WeightedGraph bq_from_field(const CubicField& cf) {
  const std::uint32_t q = cf.q;
  const std::uint32_t side = q * q;
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(side) * q);
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      for (std::uint32_t c = 0; c < q; ++c) {
        // d = ac - b
        const std::uint32_t d = cf.add[static_cast<std::size_t>(cf.mul[static_cast<std::size_t>(a) * q + c]) * q + cf.neg[b]];
        edges.push_back({a * q + b, side + c * q + d, Rational(1)});
      }
    }
  }
  WeightedGraph g(2 * static_cast<std::size_t>(side), std::move(edges), "B_" + std::to_string(q));
  std::vector<VertexLabel> labels(g.n());
  for (std::uint32_t v = 0; v < g.n(); ++v) {
    const std::uint32_t local = v % side;
    labels[v] = {{"side", v < side ? "left" : "right"},
                 {"a", ExtFieldElement::from_index(cf.field, local / q).to_string()},
                 {"b", ExtFieldElement::from_index(cf.field, local % q).to_string()}};
  }
  g.set_labels(std::move(labels));
  return g;
}

std::string bq_vertex(std::uint32_t v, std::uint32_t q) {
  const std::uint32_t side = q * q;
  return std::string(v < side ? "L" : "R") + "(" + std::to_string((v % side) / q) + "," + std::to_string(v % q) + ")";
}

}  // namespace

WeightedGraph build_bq(std::uint32_t p) { return bq_from_field(make_cubic_field(p)); }

BqSpectrumCheck bq_spectrum_check(std::uint32_t p, double tol, const SpectralOptions& options) {
  const CubicField cf = make_cubic_field(p);
  const WeightedGraph g = bq_from_field(cf);
  const std::uint32_t q = cf.q;
  const std::uint32_t side = q * q;
  BqSpectrumCheck out;
  out.q = q;
  out.walks_ok = true;
  std::vector<std::vector<std::uint32_t>> nbrs(g.n());
  for (std::uint32_t v = 0; v < g.n(); ++v) nbrs[v] = g.neighbors(v);
  std::vector<std::uint32_t> count(g.n(), 0);
  for (std::uint32_t u = 0; u < g.n() && out.walks_ok; ++u) {
    if (nbrs[u].size() != q) {
      out.walks_ok = false;
      out.walk_mismatch = bq_vertex(u, q) + " has degree " + std::to_string(nbrs[u].size());
      break;
    }
    std::fill(count.begin(), count.end(), 0);
    for (auto w : nbrs[u]) {
      for (auto v : nbrs[w]) ++count[v];
    }
    const std::uint32_t lo = u < side ? 0 : side;
    for (std::uint32_t v = lo; v < lo + side; ++v) {
      std::uint32_t expected = 0;
      if (v == u) {
        expected = q;
      } else if ((u % side) / q != (v % side) / q) {
        expected = 1;
      }
      if (count[v] != expected) {
        out.walks_ok = false;
        out.walk_mismatch = bq_vertex(u, q) + " -> " + bq_vertex(v, q) + ": " + std::to_string(count[v]) +
                            " walks of length 2, expected " + std::to_string(expected);
        break;
      }
    }
  }
  SpectralOptions dense = options;
  dense.solver = SolverChoice::kDense;
  out.report = spectral_report(g, dense);
  const double r = 1.0 / std::sqrt(static_cast<double>(q));
  std::vector<double> expected;
  expected.push_back(1.0);
  expected.insert(expected.end(), static_cast<std::size_t>(q) * q - q, r);
  expected.insert(expected.end(), 2 * static_cast<std::size_t>(q - 1), 0.0);
  expected.insert(expected.end(), static_cast<std::size_t>(q) * q - q, -r);
  expected.push_back(-1.0);
  const auto& spec = out.report.spectrum;
  out.spectrum_ok = spec.size() == expected.size();
  if (out.spectrum_ok) {
    for (std::size_t i = 0; i < spec.size(); ++i) {
      out.max_spectrum_error = std::max(out.max_spectrum_error, std::abs(spec[i] - expected[i]));
    }
    out.spectrum_ok = out.max_spectrum_error <= tol;
  }
  out.report.add_bound("1/sqrt(q)", r, true);
  return out;
}

namespace {

struct PolyPair {
  std::uint32_t ell[2];
  std::uint32_t quad[3];
};

PolyPair decode_pair(std::uint32_t id, std::uint32_t p) {
  PolyPair pr{};
  pr.ell[0] = id % p;
  pr.ell[1] = (id / p) % p;
  std::uint32_t qi = id / (p * p);
  for (auto& c : pr.quad) {
    c = qi % p;
    qi /= p;
  }
  return pr;
}

std::uint32_t encode_pair(const std::uint32_t ell[2], const std::uint32_t quad[3], std::uint32_t p) {
  return ell[0] + p * ell[1] + p * p * (quad[0] + p * quad[1] + p * p * quad[2]);
}

std::string coeffs_text(std::uint32_t p, std::initializer_list<std::uint32_t> coeffs) {
  std::vector<std::uint8_t> bytes;
  for (auto c : coeffs) bytes.push_back(static_cast<std::uint8_t>(c));
  return TruncatedPoly(RingParams{p, static_cast<std::uint32_t>(bytes.size())}, bytes).to_string();
}

}  // namespace

WeightedGraph build_A(std::uint32_t p) {
  if (!is_prime(p) || p > kMaxPrime) throw std::invalid_argument("build_A: p must be a supported prime");
  const std::uint32_t side = p * p * p * p * p;
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(side) * p * p);
  for (std::uint32_t u = 0; u < side; ++u) {
    const PolyPair a = decode_pair(u, p);
    for (std::uint32_t l0 = 0; l0 < p; ++l0) {
      for (std::uint32_t l1 = 0; l1 < p; ++l1) {
        // Q2 = ell1 * ell2 - Q1, as polynomials of degree <= 2.
        const std::uint32_t prod[3] = {(a.ell[0] * l0) % p, (a.ell[0] * l1 + a.ell[1] * l0) % p, (a.ell[1] * l1) % p};
        const std::uint32_t ell2[2] = {l0, l1};
        std::uint32_t quad2[3];
        for (int k = 0; k < 3; ++k) quad2[k] = (prod[k] + p - a.quad[k]) % p;
        edges.push_back({u, side + encode_pair(ell2, quad2, p), Rational(1)});
      }
    }
  }
  WeightedGraph g(2 * static_cast<std::size_t>(side), std::move(edges), "A_" + std::to_string(p));
  std::vector<VertexLabel> labels(g.n());
  for (std::uint32_t v = 0; v < g.n(); ++v) {
    const PolyPair pr = decode_pair(v % side, p);
    labels[v] = {{"side", v < side ? "left" : "right"},
                 {"ell", coeffs_text(p, {pr.ell[0], pr.ell[1]})},
                 {"Q", coeffs_text(p, {pr.quad[0], pr.quad[1], pr.quad[2]})}};
  }
  g.set_labels(std::move(labels));
  return g;
}

namespace {

using EdgeSet = std::set<std::pair<std::uint32_t, std::uint32_t>>;

EdgeSet edge_set(const WeightedGraph& g) {
  EdgeSet out;
  for (const auto& e : g.edges()) out.emplace(std::min(e.u, e.v), std::max(e.u, e.v));
  return out;
}

}  // namespace

InducedSubgraphCheck induced_subgraph_check(std::uint32_t p) {
  const CubicField cf = make_cubic_field(p);
  const WeightedGraph bq = bq_from_field(cf);
  const WeightedGraph a = build_A(p);
  const std::uint32_t q = cf.q;
  const std::uint32_t bq_side = q * q;
  const std::uint32_t a_side = p * p * p * p * p;
  // U'': first coordinate of degree <= 1, i.e. index below p^2.
  std::unordered_map<std::uint32_t, std::uint32_t> to_a;
  for (std::uint32_t v = 0; v < bq.n(); ++v) {
    const std::uint32_t local = v % bq_side;
    const std::uint32_t first = local / q;
    if (first >= p * p) continue;
    const std::uint32_t second = local % q;
    to_a.emplace(v, (v < bq_side ? 0 : a_side) + first + p * p * second);
  }
  InducedSubgraphCheck out;
  out.pairs_compared = static_cast<std::size_t>(a_side) * a_side;
  if (to_a.size() != a.n()) {
    out.mismatch = "U'' and V'' have " + std::to_string(to_a.size()) + " vertices, A has " + std::to_string(a.n());
    return out;
  }
  EdgeSet induced;
  for (const auto& e : bq.edges()) {
    auto iu = to_a.find(e.u);
    auto iv = to_a.find(e.v);
    if (iu == to_a.end() || iv == to_a.end()) continue;
    induced.emplace(std::min(iu->second, iv->second), std::max(iu->second, iv->second));
  }
  const EdgeSet expected = edge_set(a);
  if (induced == expected) {
    out.ok = true;
    return out;
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> diff;
  std::set_symmetric_difference(induced.begin(), induced.end(), expected.begin(), expected.end(),
                                std::back_inserter(diff));
  const auto [u, v] = diff.front();
  out.mismatch = "edge (" + a.labels()[u].at("ell") + ", " + a.labels()[u].at("Q") + ") - (" +
                 a.labels()[v].at("ell") + ", " + a.labels()[v].at("Q") + ") " +
                 (induced.count(diff.front()) ? "only in B_q" : "only in A");
  return out;
}

LinkBijectionCheck link_bijection_check(std::uint32_t p, std::uint32_t s, const ClosureOptions& options) {
  if (s < 3) {
    throw std::invalid_argument("link_bijection_check needs s >= 3: for s < 3 quadratics do not embed in F_p[t]/<t^s>");
  }
  const GroupParams params{RingParams{p, s}, 3};
  params.validate();
  const LocalLink ll = local_link(params, 1, 2, options);
  const WeightedGraph a = build_A(p);
  const std::uint32_t a_side = p * p * p * p * p;
  LinkBijectionCheck out;
  out.left = ll.cosets_a.size();
  out.right = ll.cosets_b.size();
  out.edges = ll.graph.edges().size();

  auto tuple_id = [&](const TruncatedPoly& ell, const TruncatedPoly& quad, std::string* err) -> std::uint32_t {
    if (ell.degree() > 1 || quad.degree() > 2) {
      *err = "representative entries exceed the degree caps: ell = " + ell.to_string() + ", Q = " + quad.to_string();
      return 0;
    }
    const std::uint32_t e[2] = {ell.coeff(0), ell.coeff(1)};
    const std::uint32_t qd[3] = {quad.coeff(0), quad.coeff(1), quad.coeff(2)};
    return encode_pair(e, qd, p);
  };

  // Cosets of <e_23> (type 1): M_2 representative has (2,3) entry 0, so
  // ell = x12 and Q = x13 - x12 x23; the vertex is (ell, -Q).
  // Cosets of <e_12> (type 2): M_1 representative has (1,2) entry 0, so
  // ell = x23 and Q = x13; the vertex is (ell, Q).
  std::vector<std::uint32_t> to_a(ll.graph.n());
  std::vector<int> hit(a.n(), -1);
  for (std::uint32_t v = 0; v < ll.graph.n(); ++v) {
    const bool m2 = v < out.left;
    const RingMatrix& x = m2 ? ll.cosets_a.representative(v) : ll.cosets_b.representative(v - out.left);
    std::string err;
    std::uint32_t id = 0;
    if (m2) {
      const TruncatedPoly ell = x.entry(0, 1);
      const TruncatedPoly quad = x.entry(0, 2) - x.entry(0, 1) * x.entry(1, 2);
      id = tuple_id(ell, -quad, &err);
    } else {
      id = a_side + tuple_id(x.entry(1, 2), x.entry(0, 2), &err);
    }
    if (!err.empty()) {
      out.mismatch = "coset " + std::to_string(v) + ": " + err;
      return out;
    }
    if (hit[id] >= 0) {
      out.mismatch = "cosets " + std::to_string(hit[id]) + " and " + std::to_string(v) + " both map to (" +
                     a.labels()[id].at("ell") + ", " + a.labels()[id].at("Q") + ")";
      return out;
    }
    hit[id] = static_cast<int>(v);
    to_a[v] = id;
  }
  if (ll.graph.n() != a.n()) {
    out.mismatch = "link has " + std::to_string(ll.graph.n()) + " vertices, A has " + std::to_string(a.n());
    return out;
  }
  EdgeSet mapped;
  for (const auto& e : ll.graph.edges()) {
    mapped.emplace(std::min(to_a[e.u], to_a[e.v]), std::max(to_a[e.u], to_a[e.v]));
  }
  const EdgeSet expected = edge_set(a);
  if (mapped == expected) {
    out.ok = true;
    return out;
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> diff;
  std::set_symmetric_difference(mapped.begin(), mapped.end(), expected.begin(), expected.end(),
                                std::back_inserter(diff));
  const auto [u, v] = diff.front();
  out.mismatch = "pair (" + a.labels()[u].at("ell") + ", " + a.labels()[u].at("Q") + ") - (" + a.labels()[v].at("ell") +
                 ", " + a.labels()[v].at("Q") + ") is an edge " + (mapped.count(diff.front()) ? "of the link only" : "of A only") +
                 "; link cosets " + std::to_string(hit[u]) + ", " + std::to_string(hit[v]);
  return out;
}

double induced_eig_bound(double d_sub, double d_super, double lambda_super) {
  if (!(d_sub > 0.0) || !(d_super > 0.0) || d_sub > d_super) {
    throw std::invalid_argument("induced_eig_bound: need 0 < d_sub <= d_super");
  }
  return d_super * lambda_super / d_sub;
}

}  // namespace hdx
