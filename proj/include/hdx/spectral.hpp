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

#ifndef HDX_SPECTRAL_HPP_
#define HDX_SPECTRAL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdx/coset_complex.hpp"
#include "hdx/dense_eigen.hpp"
#include "hdx/weighted_graph.hpp"
#include "json.hpp"

namespace hdx {

/// S(u, v) = w(u, v) / sqrt(w(u) w(v)), similar to A_G(u, v) = w(u, v) / w(u).
struct AdjacencyOperator {
  std::string graph_id;
  DenseMatrix symmetric;
  std::vector<double> sqrt_vertex_weight;
};

/// Throws std::invalid_argument if some vertex has weight 0.
AdjacencyOperator adjacency_operator(const WeightedGraph& g);

/// (A_G f)(u) = sum_v w(u, v) f(v) / w(u).
std::vector<double> apply_averaging(const WeightedGraph& g, std::span<const double> f);
/// E_{u ~ w}[f(u) g(u)] with w the normalized vertex weights.
double weighted_inner(const WeightedGraph& g, std::span<const double> f, std::span<const double> h);

enum class SolverChoice { kAuto, kDense, kIterative };

std::string to_string(SolverChoice choice);
SolverChoice parse_solver_choice(const std::string& text);

struct SpectralOptions {
  SolverChoice solver = SolverChoice::kAuto;
  /// kAuto solves densely up to this many vertices.
  std::size_t crossover = 6000;
  /// Tolerance for bound comparisons and the iterative residual.
  double tol = 1e-8;
  std::size_t max_iterations = 200000;
  DenseOptions dense;
};

struct BoundCheck {
  std::string name;
  double value = 0.0;
  bool satisfied = false;
};

struct SpectralReport {
  std::string graph_id;
  std::size_t n = 0;
  double lambda_max = 1.0;
  double lambda_2 = 1.0;
  double lambda_min = -1.0;
  bool is_connected = false;
  bool is_bipartite = false;
  std::vector<BoundCheck> bounds;
  std::string solver;
  double tol = 0.0;
  /// Full spectrum, descending; dense path only.
  std::vector<double> spectrum;

  /// max(lambda_2, |lambda_min|).
  double two_sided() const;
  /// Appends a bound on lambda_2 (onesided) or on max(lambda_2, |lambda_min|).
  void add_bound(const std::string& name, double value, bool onesided);
};

nlohmann::json to_json(const SpectralReport& report);

struct IterativeResult {
  double lambda_2 = 1.0;
  double lambda_min = -1.0;
  double residual_2 = 0.0;
  double residual_min = 0.0;
  std::size_t iterations_2 = 0;
  std::size_t iterations_min = 0;
};

/// Power iteration on (I + S)/2 restricted to the complement of sqrt(w) for
/// lambda_2 and on (I - S)/2 for lambda_min. Both stop once the Rayleigh
/// residual ||S x - lambda x|| is at most tol; SolverError past the cap.
/// Requires a connected graph.
IterativeResult eig_extremes_iterative(const WeightedGraph& g, double tol, std::size_t max_iterations = 200000);

/// Connectivity by breadth-first search, then a dense or iterative solve. A
/// disconnected graph reports lambda_2 = 1.
SpectralReport spectral_report(const WeightedGraph& g, const SpectralOptions& options = {});

/// Report on the 1-skeleton of the link of f.
struct LinkReport {
  Face face;
  int level = -1;
  SpectralReport report;
};

/// Reports for every face of level -1 .. dimension-2, ordered by level then
/// face. Links are solved in parallel.
std::vector<LinkReport> link_reports(const WeightedComplex& x, const SpectralOptions& options = {});

struct HdxCertificate {
  double lambda = 0.0;
  double tol = 0.0;
  std::vector<LinkReport> links;
  /// Per level, starting at level -1.
  std::vector<double> max_lambda_2;
  std::vector<double> min_lambda_min;
  bool onesided = false;
  bool twosided = false;
  /// First disconnected link, if any.
  std::optional<Face> disconnected_face;
  /// First face whose link violates the one-sided (then two-sided) bound.
  std::optional<Face> onesided_violation;
  std::optional<Face> twosided_violation;
};

HdxCertificate certify_from_reports(std::vector<LinkReport> links, double lambda, double tol);
HdxCertificate hdx_certify(const WeightedComplex& x, double lambda, const SpectralOptions& options = {});

/// One application of the one-level inequality to the link of `base`.
struct TrickleDownEntry {
  Face base;
  int level = -1;
  double lambda = 0.0;       // max over vertex links of lambda_2
  double eta = 0.0;          // min over vertex links of lambda_min
  double gamma_plus = 0.0;   // lambda_2 of the skeleton of X_base
  double gamma_minus = 0.0;  // lambda_min of the skeleton of X_base
  double bound_plus = 0.0;   // lambda / (1 - lambda)
  double bound_minus = 0.0;  // eta / (1 - eta)
  bool positive_applicable = false;  // skeleton of X_base connected and lambda < 1
  bool positive_ok = true;
  bool negative_ok = true;
};

struct TrickleDownLedger {
  double tol = 0.0;
  std::vector<TrickleDownEntry> entries;
  bool ok = true;
};

/// Checks gamma+ <= lambda/(1-lambda) + tol and gamma- >= eta/(1-eta) - tol
/// on the link of every face of level -1 .. dimension-3.
TrickleDownLedger trickle_down_from_reports(const WeightedComplex& x, const std::vector<LinkReport>& links, double tol);
TrickleDownLedger trickle_down_check(const WeightedComplex& x, const SpectralOptions& options = {});

nlohmann::json to_json(const TrickleDownLedger& ledger);

struct DescentBounds {
  double onesided = 0.0;
  bool onesided_vacuous = false;
  double eta_term = 0.0;  // |eta / (1 - (d-k-1) eta)|
  double twosided = 0.0;
  bool twosided_vacuous = false;
};

/// Bounds for a d-partite complex whose top links have lambda_2 <= lambda and
/// lambda_min >= eta: lambda / (1 - (d-2) lambda) for every link, and for the
/// k-skeleton the two-sided max(onesided, |eta / (1 - (d-k-1) eta)|). A bound
/// with nonpositive denominator or value >= 1 is vacuous.
DescentBounds descent_bounds(double lambda, double eta, int d, int k);

/// Exact-in-floats identity checks on a graph and on a 2-dimensional (or
/// higher) complex. Functions are indexed by graph vertex and global vertex
/// id respectively.
double self_adjointness_defect(const WeightedGraph& g, std::span<const double> f, std::span<const double> h);

struct LocalDecomposition {
  WeightedGraph skeleton;
  std::vector<std::uint32_t> skeleton_ids;
  std::vector<std::uint32_t> vertices;        // global ids with a vertex link
  std::vector<double> vertex_distribution;    // level-0 weights
  std::vector<WeightedGraph> vertex_links;
  std::vector<std::vector<std::uint32_t>> vertex_link_ids;
};

LocalDecomposition make_local_decomposition(const WeightedComplex& x);
/// |<A f, h>_X - E_{v ~ mu_0}[<A_v f_v, h_v>_{X_v}]|.
double local_decomposition_defect(const LocalDecomposition& ld, std::span<const double> f, std::span<const double> h);

}  // namespace hdx

#endif  // HDX_SPECTRAL_HPP_
