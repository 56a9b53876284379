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

#include "hdx/dense_eigen.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hdx/errors.hpp"

namespace hdx {

double DenseMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (double x : data_) sum += x * x;
  return std::sqrt(sum);
}

double DenseMatrix::off_diagonal_norm() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const double* r = row(i);
    for (std::size_t j = 0; j < n_; ++j) {
      if (i != j) sum += r[j] * r[j];
    }
  }
  return std::sqrt(sum);
}

double DenseMatrix::asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  }
  return worst;
}

std::string to_string(DenseMethod method) {
  switch (method) {
    case DenseMethod::kAuto: return "auto";
    case DenseMethod::kJacobiCyclic: return "jacobi-cyclic";
    case DenseMethod::kJacobiParallel: return "jacobi-round-robin";
    case DenseMethod::kTridiagonalQL: return "householder-ql";
  }
  return "unknown";
}

namespace {

struct Rotation {
  double c = 1.0;
  double s = 0.0;
  double t = 0.0;
};

// Rotation that annihilates a_pq.
Rotation jacobi_rotation(double app, double aqq, double apq) {
  Rotation r;
  if (apq == 0.0) return r;
  const double theta = (aqq - app) / (2.0 * apq);
  r.t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  r.c = 1.0 / std::sqrt(r.t * r.t + 1.0);
  r.s = r.t * r.c;
  return r;
}

std::vector<double> sorted_diagonal(const DenseMatrix& a) {
  std::vector<double> out(a.n());
  for (std::size_t i = 0; i < a.n(); ++i) out[i] = a(i, i);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

std::vector<double> jacobi_eigenvalues_serial(DenseMatrix a, double tol, int max_sweeps, int* sweeps,
                                              double* residual) {
  const std::size_t n = a.n();
  const double scale = std::max(a.frobenius_norm(), 1e-300);
  int sweep = 0;
  double off = a.off_diagonal_norm() / scale;
  while (off > tol) {
    if (sweep == max_sweeps) {
      throw SolverError("cyclic Jacobi did not reach off-diagonal norm " + std::to_string(tol) + " within " +
                        std::to_string(max_sweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const Rotation rot = jacobi_rotation(a(p, p), a(q, q), apq);
        const double tau = rot.s / (1.0 + rot.c);
        a(p, p) -= rot.t * apq;
        a(q, q) += rot.t * apq;
        a(p, q) = a(q, p) = 0.0;
        double* rp = a.row(p);
        double* rq = a.row(q);
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double g = rp[r];
          const double h = rq[r];
          const double gp = g - rot.s * (h + g * tau);
          const double hq = h + rot.s * (g - h * tau);
          rp[r] = gp;
          rq[r] = hq;
          a(r, p) = gp;
          a(r, q) = hq;
        }
      }
    }
    ++sweep;
    off = a.off_diagonal_norm() / scale;
  }
  if (sweeps) *sweeps = sweep;
  if (residual) *residual = off;
  return sorted_diagonal(a);
}

std::vector<double> jacobi_eigenvalues_parallel(DenseMatrix a, double tol, int max_sweeps, int* sweeps,
                                                double* residual) {
  const std::size_t n = a.n();
  const double scale = std::max(a.frobenius_norm(), 1e-300);
  // Round-robin schedule over an even number of slots; slot n is a dummy
  // when n is odd.
  const std::size_t slots = n + (n % 2);
  std::vector<std::size_t> players(slots);
  std::iota(players.begin(), players.end(), std::size_t{0});
  const std::size_t half = slots / 2;
  std::vector<std::size_t> ps(half);
  std::vector<std::size_t> qs(half);
  std::vector<Rotation> rots(half);

  int sweep = 0;
  double off = a.off_diagonal_norm() / scale;
  while (off > tol) {
    if (sweep == max_sweeps) {
      throw SolverError("round-robin Jacobi did not reach off-diagonal norm " + std::to_string(tol) + " within " +
                        std::to_string(max_sweeps) + " sweeps");
    }
    for (std::size_t round = 0; round + 1 < slots; ++round) {
      std::size_t active = 0;
      for (std::size_t k = 0; k < half; ++k) {
        std::size_t p = players[k];
        std::size_t q = players[slots - 1 - k];
        if (p >= n || q >= n) continue;
        if (p > q) std::swap(p, q);
        ps[active] = p;
        qs[active] = q;
        rots[active] = jacobi_rotation(a(p, p), a(q, q), a(p, q));
        ++active;
      }
      const auto count = static_cast<std::int64_t>(active);
      // Rows: A <- P^T A.
#pragma omp parallel for schedule(static)
      for (std::int64_t k = 0; k < count; ++k) {
        const Rotation& rot = rots[static_cast<std::size_t>(k)];
        if (rot.s == 0.0) continue;
        double* rp = a.row(ps[static_cast<std::size_t>(k)]);
        double* rq = a.row(qs[static_cast<std::size_t>(k)]);
        for (std::size_t j = 0; j < n; ++j) {
          const double g = rp[j];
          const double h = rq[j];
          rp[j] = rot.c * g - rot.s * h;
          rq[j] = rot.s * g + rot.c * h;
        }
      }
      // Columns: A <- A P.
#pragma omp parallel for schedule(static)
      for (std::int64_t r = 0; r < static_cast<std::int64_t>(n); ++r) {
        double* row = a.row(static_cast<std::size_t>(r));
        for (std::size_t k = 0; k < active; ++k) {
          const Rotation& rot = rots[k];
          if (rot.s == 0.0) continue;
          const double g = row[ps[k]];
          const double h = row[qs[k]];
          row[ps[k]] = rot.c * g - rot.s * h;
          row[qs[k]] = rot.s * g + rot.c * h;
        }
      }
      for (std::size_t k = 0; k < active; ++k) {
        if (rots[k].s != 0.0) a(ps[k], qs[k]) = a(qs[k], ps[k]) = 0.0;
      }
      std::rotate(players.begin() + 1, players.end() - 1, players.end());
    }
    ++sweep;
    off = a.off_diagonal_norm() / scale;
  }
  if (sweeps) *sweeps = sweep;
  if (residual) *residual = off;
  return sorted_diagonal(a);
}

namespace {

template <bool kParallel>
Tridiagonal householder_impl(DenseMatrix a) {
  const std::size_t n = a.n();
  Tridiagonal out;
  out.diagonal.assign(n, 0.0);
  out.subdiagonal.assign(n > 0 ? n - 1 : 0, 0.0);
  std::vector<double> v(n);
  std::vector<double> w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    const double* xk = a.row(k) + k + 1;  // column k below the diagonal, by symmetry
    double norm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) norm2 += xk[i] * xk[i];
    const double norm = std::sqrt(norm2);
    out.diagonal[k] = a(k, k);
    if (norm == 0.0) {
      out.subdiagonal[k] = 0.0;
      continue;
    }
    const double alpha = xk[0] > 0.0 ? -norm : norm;
    for (std::size_t i = 0; i < m; ++i) v[i] = xk[i];
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) vnorm2 += v[i] * v[i];
    out.subdiagonal[k] = alpha;
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;
    const auto mm = static_cast<std::int64_t>(m);
    const std::size_t off = k + 1;
    // w = beta * A22 v
#pragma omp parallel for schedule(static) if (kParallel)
    for (std::int64_t i = 0; i < mm; ++i) {
      const double* r = a.row(off + static_cast<std::size_t>(i)) + off;
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += r[j] * v[j];
      w[static_cast<std::size_t>(i)] = beta * acc;
    }
    double vw = 0.0;
    for (std::size_t i = 0; i < m; ++i) vw += v[i] * w[i];
    const double half = 0.5 * beta * vw;
    for (std::size_t i = 0; i < m; ++i) w[i] -= half * v[i];
    // A22 -= v w^T + w v^T
#pragma omp parallel for schedule(static) if (kParallel)
    for (std::int64_t i = 0; i < mm; ++i) {
      double* r = a.row(off + static_cast<std::size_t>(i)) + off;
      const double vi = v[static_cast<std::size_t>(i)];
      const double wi = w[static_cast<std::size_t>(i)];
      for (std::size_t j = 0; j < m; ++j) r[j] -= vi * w[j] + wi * v[j];
    }
  }
  if (n >= 2) {
    out.diagonal[n - 2] = a(n - 2, n - 2);
    out.subdiagonal[n - 2] = a(n - 1, n - 2);
  }
  if (n >= 1) out.diagonal[n - 1] = a(n - 1, n - 1);
  return out;
}

}  // namespace

Tridiagonal householder_tridiagonalize_serial(DenseMatrix a) { return householder_impl<false>(std::move(a)); }
Tridiagonal householder_tridiagonalize_parallel(DenseMatrix a) { return householder_impl<true>(std::move(a)); }

std::vector<double> tridiagonal_ql_eigenvalues(Tridiagonal t) {
  auto& d = t.diagonal;
  const std::size_t n = d.size();
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = t.subdiagonal[i];
  constexpr int kMaxIterations = 100;
  const double eps = std::numeric_limits<double>::epsilon();
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm = std::max(norm, std::abs(d[i]) + std::abs(e[i]) + (i > 0 ? std::abs(e[i - 1]) : 0.0));
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        // near-zero diagonals would never split on a purely local test
        const double dd = std::max(std::abs(d[m]) + std::abs(d[m + 1]), norm);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxIterations) throw SolverError("tridiagonal QL did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool deflated = false;
        for (std::size_t i = m; i-- > l;) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

DenseEigenResult eig_symmetric(const DenseMatrix& m, const DenseOptions& options) {
  double largest = 0.0;
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (std::size_t j = 0; j < m.n(); ++j) largest = std::max(largest, std::abs(m(i, j)));
  }
  if (m.asymmetry() > options.tol * std::max(1.0, largest)) {
    throw std::invalid_argument("eig_symmetric: input is not symmetric within tolerance");
  }
  DenseEigenResult result;
  result.method = options.method;
  if (result.method == DenseMethod::kAuto) {
    result.method = m.n() <= options.jacobi_max_n ? DenseMethod::kJacobiParallel : DenseMethod::kTridiagonalQL;
  }
  switch (result.method) {
    case DenseMethod::kJacobiCyclic:
      result.eigenvalues = jacobi_eigenvalues_serial(m, options.tol, options.max_sweeps, &result.sweeps, &result.residual);
      break;
    case DenseMethod::kJacobiParallel:
      result.eigenvalues =
          jacobi_eigenvalues_parallel(m, options.tol, options.max_sweeps, &result.sweeps, &result.residual);
      break;
    case DenseMethod::kTridiagonalQL:
      result.eigenvalues = tridiagonal_ql_eigenvalues(householder_tridiagonalize_parallel(m));
      break;
    case DenseMethod::kAuto:
      break;
  }
  return result;
}

}  // namespace hdx
