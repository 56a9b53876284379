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

#include "hdx/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

#include "hdx/errors.hpp"
#include "hdx/sparse.hpp"

namespace hdx {

AdjacencyOperator adjacency_operator(const WeightedGraph& g) {
  AdjacencyOperator op;
  op.graph_id = g.id();
  op.symmetric = DenseMatrix(g.n());
  op.sqrt_vertex_weight.resize(g.n());
  for (std::uint32_t u = 0; u < g.n(); ++u) {
    const double w = to_double(g.vertex_weight(u));
    if (!(w > 0.0)) throw std::invalid_argument("adjacency operator: vertex " + std::to_string(u) + " has weight 0");
    op.sqrt_vertex_weight[u] = std::sqrt(w);
  }
  for (const auto& e : g.edges()) {
    const double s = to_double(e.weight) / (op.sqrt_vertex_weight[e.u] * op.sqrt_vertex_weight[e.v]);
    op.symmetric(e.u, e.v) = s;
    op.symmetric(e.v, e.u) = s;
  }
  return op;
}

std::vector<double> apply_averaging(const WeightedGraph& g, std::span<const double> f) {
  if (f.size() != g.n()) throw std::invalid_argument("apply_averaging: dimension mismatch");
  std::vector<double> out(g.n(), 0.0);
  for (const auto& e : g.edges()) {
    const double w = to_double(e.weight);
    out[e.u] += w * f[e.v];
    out[e.v] += w * f[e.u];
  }
  for (std::uint32_t u = 0; u < g.n(); ++u) out[u] /= to_double(g.vertex_weight(u));
  return out;
}

double weighted_inner(const WeightedGraph& g, std::span<const double> f, std::span<const double> h) {
  if (f.size() != g.n() || h.size() != g.n()) throw std::invalid_argument("weighted_inner: dimension mismatch");
  double total = 0.0;
  double acc = 0.0;
  for (std::uint32_t u = 0; u < g.n(); ++u) {
    const double w = to_double(g.vertex_weight(u));
    total += w;
    acc += w * f[u] * h[u];
  }
  return acc / total;
}

std::string to_string(SolverChoice choice) {
  switch (choice) {
    case SolverChoice::kAuto: return "auto";
    case SolverChoice::kDense: return "dense";
    case SolverChoice::kIterative: return "iterative";
  }
  return "unknown";
}

SolverChoice parse_solver_choice(const std::string& text) {
  if (text == "auto") return SolverChoice::kAuto;
  if (text == "dense") return SolverChoice::kDense;
  if (text == "iterative") return SolverChoice::kIterative;
  throw std::invalid_argument("unknown solver '" + text + "' (expected dense, iterative or auto)");
}

double SpectralReport::two_sided() const { return std::max(lambda_2, std::abs(lambda_min)); }

void SpectralReport::add_bound(const std::string& name, double value, bool onesided) {
  const double measured = onesided ? lambda_2 : two_sided();
  bounds.push_back({name, value, measured <= value + tol});
}

nlohmann::json to_json(const SpectralReport& report) {
  nlohmann::json bounds = nlohmann::json::array();
  for (const auto& b : report.bounds) {
    bounds.push_back({{"name", b.name}, {"value", b.value}, {"satisfied", b.satisfied}});
  }
  return {{"graph_id", report.graph_id},
          {"n", report.n},
          {"lambda2", report.lambda_2},
          {"lambda_min", report.lambda_min},
          {"lambda_max", report.lambda_max},
          {"connected", report.is_connected},
          {"bipartite", report.is_bipartite},
          {"bounds", bounds},
          {"solver", report.solver},
          {"tol", report.tol}};
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void normalize(std::span<double> x) {
  const double norm = std::sqrt(dot(x, x));
  for (double& v : x) v /= norm;
}

void project_out(std::span<double> x, std::span<const double> unit) {
  const double c = dot(x, unit);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * unit[i];
}

struct PowerResult {
  double eigenvalue = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
};

// Power iteration on (I + sign S)/2, optionally orthogonal to `deflate`.
// Returns the eigenvalue of S at the converged vector.
PowerResult shifted_power(const CsrMatrix& s, double sign, std::span<const double> deflate, double tol,
                          std::size_t max_iterations, const char* what) {
  const std::size_t n = s.n;
  std::vector<double> x(n);
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (double& v : x) v = unif(rng);
  if (!deflate.empty()) project_out(x, deflate);
  normalize(x);
  std::vector<double> sx(n);
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    matvec_parallel(s, x, sx);
    const double rayleigh = dot(x, sx);
    double res2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = sx[i] - rayleigh * x[i];
      res2 += r * r;
    }
    if (std::sqrt(res2) <= tol) return {rayleigh, std::sqrt(res2), it};
    for (std::size_t i = 0; i < n; ++i) x[i] = 0.5 * (x[i] + sign * sx[i]);
    if (!deflate.empty()) project_out(x, deflate);
    normalize(x);
  }
  throw SolverError(std::string("power iteration for ") + what + " did not reach residual " + std::to_string(tol) +
                    " within " + std::to_string(max_iterations) + " iterations");
}

}  // namespace

IterativeResult eig_extremes_iterative(const WeightedGraph& g, double tol, std::size_t max_iterations) {
  if (!is_connected(g)) throw std::invalid_argument("eig_extremes_iterative: graph is not connected");
  if (g.n() < 2) throw std::invalid_argument("eig_extremes_iterative: need at least two vertices");
  const CsrMatrix s = normalized_adjacency_csr(g);
  std::vector<double> top(g.n());
  for (std::uint32_t u = 0; u < g.n(); ++u) top[u] = std::sqrt(to_double(g.vertex_weight(u)));
  normalize(top);
  IterativeResult out;
  const PowerResult second = shifted_power(s, 1.0, top, tol, max_iterations, "lambda_2");
  const PowerResult lowest = shifted_power(s, -1.0, {}, tol, max_iterations, "lambda_min");
  out.lambda_2 = second.eigenvalue;
  out.residual_2 = second.residual;
  out.iterations_2 = second.iterations;
  out.lambda_min = lowest.eigenvalue;
  out.residual_min = lowest.residual;
  out.iterations_min = lowest.iterations;
  return out;
}

SpectralReport spectral_report(const WeightedGraph& g, const SpectralOptions& options) {
  SpectralReport report;
  report.graph_id = g.id();
  report.n = g.n();
  report.tol = options.tol;
  const Connectivity conn = connectivity(g);
  report.is_connected = conn == Connectivity::kConnected;
  report.is_bipartite = is_bipartite(g);
  if (g.n() == 0) throw std::invalid_argument("spectral_report: empty graph");
  bool dense = options.solver == SolverChoice::kDense ||
               (options.solver == SolverChoice::kAuto && g.n() <= options.crossover);
  // The iterative path needs a connected graph; a disconnected one is solved densely.
  if (!report.is_connected) dense = true;
  if (dense) {
    const AdjacencyOperator op = adjacency_operator(g);
    DenseEigenResult eig = eig_symmetric(op.symmetric, options.dense);
    report.spectrum = std::move(eig.eigenvalues);
    report.lambda_max = report.spectrum.front();
    report.lambda_2 = report.spectrum.size() > 1 ? report.spectrum[1] : report.spectrum.front();
    report.lambda_min = report.spectrum.back();
    report.solver = "dense/" + to_string(eig.method);
  } else {
    const IterativeResult it = eig_extremes_iterative(g, options.tol, options.max_iterations);
    report.lambda_max = 1.0;
    report.lambda_2 = it.lambda_2;
    report.lambda_min = it.lambda_min;
    report.solver = "iterative/power";
  }
  if (!report.is_connected) report.lambda_2 = 1.0;
  return report;
}

std::vector<LinkReport> link_reports(const WeightedComplex& x, const SpectralOptions& options) {
  std::vector<LinkReport> out;
  for (int level = -1; level <= x.dimension() - 2; ++level) {
    for (const Face& f : x.faces(level)) out.push_back({f, level, {}});
  }
  const auto count = static_cast<std::int64_t>(out.size());
  std::vector<std::string> errors(out.size());
  std::vector<int> solver_failed(out.size(), 0);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < count; ++k) {
    auto& entry = out[static_cast<std::size_t>(k)];
    try {
      WeightedGraph skeleton = one_skeleton(link(x, entry.face).complex);
      std::string id = "link{";
      for (std::size_t i = 0; i < entry.face.size(); ++i) id += (i ? "," : "") + std::to_string(entry.face[i]);
      skeleton.set_id(id + "}");
      entry.report = spectral_report(skeleton, options);
    } catch (const SolverError& e) {
      errors[static_cast<std::size_t>(k)] = e.what();
      solver_failed[static_cast<std::size_t>(k)] = 1;
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(k)] = e.what();
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (errors[k].empty()) continue;
    if (solver_failed[k]) throw SolverError(errors[k]);
    throw std::runtime_error(errors[k]);
  }
  return out;
}

HdxCertificate certify_from_reports(std::vector<LinkReport> links, double lambda, double tol) {
  HdxCertificate cert;
  cert.lambda = lambda;
  cert.tol = tol;
  cert.onesided = true;
  cert.twosided = true;
  for (const auto& link : links) {
    const auto slot = static_cast<std::size_t>(link.level + 1);
    if (cert.max_lambda_2.size() <= slot) {
      cert.max_lambda_2.resize(slot + 1, -std::numeric_limits<double>::infinity());
      cert.min_lambda_min.resize(slot + 1, std::numeric_limits<double>::infinity());
    }
    cert.max_lambda_2[slot] = std::max(cert.max_lambda_2[slot], link.report.lambda_2);
    cert.min_lambda_min[slot] = std::min(cert.min_lambda_min[slot], link.report.lambda_min);
    if (!link.report.is_connected) {
      if (!cert.disconnected_face) cert.disconnected_face = link.face;
      cert.onesided = false;
      cert.twosided = false;
    }
    if (link.report.lambda_2 > lambda + tol) {
      if (!cert.onesided_violation) cert.onesided_violation = link.face;
      cert.onesided = false;
    }
    if (link.report.two_sided() > lambda + tol) {
      if (!cert.twosided_violation) cert.twosided_violation = link.face;
      cert.twosided = false;
    }
  }
  cert.links = std::move(links);
  return cert;
}

HdxCertificate hdx_certify(const WeightedComplex& x, double lambda, const SpectralOptions& options) {
  if (!is_pure(x)) throw std::invalid_argument("hdx_certify: complex is not pure");
  return certify_from_reports(link_reports(x, options), lambda, options.tol);
}

TrickleDownLedger trickle_down_from_reports(const WeightedComplex& x, const std::vector<LinkReport>& links, double tol) {
  std::map<Face, const SpectralReport*> by_face;
  for (const auto& l : links) by_face.emplace(l.face, &l.report);
  auto report_of = [&](const Face& f) -> const SpectralReport& {
    auto it = by_face.find(f);
    if (it == by_face.end()) throw std::invalid_argument("trickle-down: no report for a required link");
    return *it->second;
  };
  TrickleDownLedger ledger;
  ledger.tol = tol;
  for (int level = -1; level <= x.dimension() - 3; ++level) {
    for (const Face& base : x.faces(level)) {
      TrickleDownEntry entry;
      entry.base = base;
      entry.level = level;
      const SpectralReport& whole = report_of(base);
      entry.gamma_plus = whole.lambda_2;
      entry.gamma_minus = whole.lambda_min;
      entry.lambda = -std::numeric_limits<double>::infinity();
      entry.eta = std::numeric_limits<double>::infinity();
      const LinkView lv = link(x, base);
      for (const Face& v : lv.complex.faces(0)) {
        Face up = base;
        up.insert(std::upper_bound(up.begin(), up.end(), v.front()), v.front());
        const SpectralReport& r = report_of(up);
        entry.lambda = std::max(entry.lambda, r.lambda_2);
        entry.eta = std::min(entry.eta, r.lambda_min);
      }
      entry.bound_plus = entry.lambda < 1.0 ? entry.lambda / (1.0 - entry.lambda)
                                            : std::numeric_limits<double>::infinity();
      entry.bound_minus = entry.eta / (1.0 - entry.eta);
      entry.positive_applicable = whole.is_connected && entry.lambda < 1.0;
      entry.positive_ok = !entry.positive_applicable || entry.gamma_plus <= entry.bound_plus + tol;
      entry.negative_ok = entry.gamma_minus >= entry.bound_minus - tol;
      ledger.ok = ledger.ok && entry.positive_ok && entry.negative_ok;
      ledger.entries.push_back(std::move(entry));
    }
  }
  return ledger;
}

TrickleDownLedger trickle_down_check(const WeightedComplex& x, const SpectralOptions& options) {
  return trickle_down_from_reports(x, link_reports(x, options), options.tol);
}

nlohmann::json to_json(const TrickleDownLedger& ledger) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : ledger.entries) {
    auto finite = [](double v) -> nlohmann::json {
      if (std::isfinite(v)) return v;
      return "inf";
    };
    entries.push_back({{"base", e.base},
                       {"level", e.level},
                       {"lambda", e.lambda},
                       {"eta", e.eta},
                       {"gamma_plus", e.gamma_plus},
                       {"gamma_minus", e.gamma_minus},
                       {"bound_plus", finite(e.bound_plus)},
                       {"bound_minus", e.bound_minus},
                       {"positive_applicable", e.positive_applicable},
                       {"positive_ok", e.positive_ok},
                       {"negative_ok", e.negative_ok}});
  }
  return {{"tol", ledger.tol}, {"ok", ledger.ok}, {"entries", entries}};
}

DescentBounds descent_bounds(double lambda, double eta, int d, int k) {
  if (d < 2 || k < 1 || k >= d) throw std::invalid_argument("descent_bounds: need d >= 2 and 1 <= k < d");
  DescentBounds b;
  const double denom = 1.0 - (d - 2) * lambda;
  b.onesided = denom > 0.0 ? lambda / denom : std::numeric_limits<double>::infinity();
  b.onesided_vacuous = !(denom > 0.0) || b.onesided >= 1.0;
  const double eta_denom = 1.0 - (d - k - 1) * eta;
  b.eta_term = eta_denom != 0.0 ? std::abs(eta / eta_denom) : std::numeric_limits<double>::infinity();
  b.twosided = std::max(b.onesided, b.eta_term);
  b.twosided_vacuous = !std::isfinite(b.twosided) || b.twosided >= 1.0;
  return b;
}

double self_adjointness_defect(const WeightedGraph& g, std::span<const double> f, std::span<const double> h) {
  const std::vector<double> af = apply_averaging(g, f);
  const std::vector<double> ah = apply_averaging(g, h);
  return std::abs(weighted_inner(g, af, h) - weighted_inner(g, f, ah));
}

LocalDecomposition make_local_decomposition(const WeightedComplex& x) {
  if (x.dimension() < 2) throw std::invalid_argument("local decomposition needs a complex of dimension >= 2");
  std::vector<std::uint32_t> ids;
  WeightedGraph skeleton = one_skeleton(x, &ids);
  LocalDecomposition ld{std::move(skeleton), std::move(ids), {}, {}, {}, {}};
  const auto& verts = x.faces(0);
  for (std::size_t k = 0; k < verts.size(); ++k) {
    ld.vertices.push_back(verts[k].front());
    ld.vertex_distribution.push_back(to_double(x.weights(0)[k]));
  }
  ld.vertex_links.resize(verts.size(), WeightedGraph(0, {}));
  ld.vertex_link_ids.resize(verts.size());
  const auto count = static_cast<std::int64_t>(verts.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto i = static_cast<std::size_t>(k);
    ld.vertex_links[i] = one_skeleton(link(x, verts[i]).complex, &ld.vertex_link_ids[i]);
  }
  return ld;
}

namespace {

// <A f, h> over a graph whose vertices carry global ids.
double averaged_pairing(const WeightedGraph& g, const std::vector<std::uint32_t>& ids, std::span<const double> f,
                        std::span<const double> h) {
  std::vector<double> fl(g.n());
  std::vector<double> hl(g.n());
  for (std::size_t u = 0; u < g.n(); ++u) {
    fl[u] = f[ids[u]];
    hl[u] = h[ids[u]];
  }
  return weighted_inner(g, apply_averaging(g, fl), hl);
}

}  // namespace

double local_decomposition_defect(const LocalDecomposition& ld, std::span<const double> f, std::span<const double> h) {
  const double lhs = averaged_pairing(ld.skeleton, ld.skeleton_ids, f, h);
  double rhs = 0.0;
  for (std::size_t k = 0; k < ld.vertices.size(); ++k) {
    rhs += ld.vertex_distribution[k] * averaged_pairing(ld.vertex_links[k], ld.vertex_link_ids[k], f, h);
  }
  return std::abs(lhs - rhs);
}

}  // namespace hdx
