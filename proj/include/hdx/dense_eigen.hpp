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

#ifndef HDX_DENSE_EIGEN_HPP_
#define HDX_DENSE_EIGEN_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace hdx {

/// Square row-major matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t n() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double* row(std::size_t i) { return data_.data() + i * n_; }
  const double* row(std::size_t i) const { return data_.data() + i * n_; }

  double frobenius_norm() const;
  /// sqrt of the sum of squared off-diagonal entries.
  double off_diagonal_norm() const;
  /// Largest |a_ij - a_ji|.
  double asymmetry() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

enum class DenseMethod { kAuto, kJacobiCyclic, kJacobiParallel, kTridiagonalQL };

std::string to_string(DenseMethod method);

struct DenseOptions {
  DenseMethod method = DenseMethod::kAuto;
  /// Jacobi stops once off(A) <= tol * ||A||_F.
  double tol = 1e-10;
  int max_sweeps = 60;
  /// kAuto uses Jacobi up to this size and Householder + QL above it.
  std::size_t jacobi_max_n = 32;
};

struct DenseEigenResult {
  std::vector<double> eigenvalues;  // descending
  DenseMethod method = DenseMethod::kAuto;
  int sweeps = 0;
  /// Relative off-diagonal norm at exit (Jacobi only; 0 for QL).
  double residual = 0.0;
};

/// Full spectrum of a symmetric matrix. Throws std::invalid_argument if the
/// input is not symmetric within tol (relative to its largest entry) and
/// SolverError if an iteration budget runs out.
DenseEigenResult eig_symmetric(const DenseMatrix& m, const DenseOptions& options = {});

// Kernels. Each returns eigenvalues in descending order.

/// Cyclic-by-row Jacobi rotations on one thread.
std::vector<double> jacobi_eigenvalues_serial(DenseMatrix a, double tol, int max_sweeps, int* sweeps = nullptr,
                                              double* residual = nullptr);

/// Jacobi with round-robin pair ordering: each round applies n/2 disjoint
/// rotations, row updates and column updates in parallel.
std::vector<double> jacobi_eigenvalues_parallel(DenseMatrix a, double tol, int max_sweeps, int* sweeps = nullptr,
                                                double* residual = nullptr);

/// Householder reduction to tridiagonal form; diagonal and subdiagonal.
struct Tridiagonal {
  std::vector<double> diagonal;
  std::vector<double> subdiagonal;  // size n - 1
};
Tridiagonal householder_tridiagonalize_serial(DenseMatrix a);
Tridiagonal householder_tridiagonalize_parallel(DenseMatrix a);

/// Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal matrix.
std::vector<double> tridiagonal_ql_eigenvalues(Tridiagonal t);

}  // namespace hdx

#endif  // HDX_DENSE_EIGEN_HPP_
