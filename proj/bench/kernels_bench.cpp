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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hdx/coset_complex.hpp"
#include "hdx/dense_eigen.hpp"
#include "hdx/matrix_group.hpp"
#include "hdx/sparse.hpp"

namespace {

hdx::DenseMatrix random_symmetric(std::size_t n) {
  std::mt19937 rng(0x5eed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  hdx::DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = unif(rng);
  return m;
}

hdx::GroupParams params(std::uint32_t p, std::uint32_t s, std::uint32_t d) {
  hdx::GroupParams g;
  g.ring = {p, s};
  g.d = d;
  return g;
}

void BM_JacobiSerial(benchmark::State& state) {
  const auto m = random_symmetric(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hdx::jacobi_eigenvalues_serial(m, 1e-10, 60));
}
void BM_JacobiParallel(benchmark::State& state) {
  const auto m = random_symmetric(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hdx::jacobi_eigenvalues_parallel(m, 1e-10, 60));
}
void BM_TridiagonalQLSerial(benchmark::State& state) {
  const auto m = random_symmetric(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(hdx::tridiagonal_ql_eigenvalues(hdx::householder_tridiagonalize_serial(m)));
}
void BM_TridiagonalQLParallel(benchmark::State& state) {
  const auto m = random_symmetric(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(hdx::tridiagonal_ql_eigenvalues(hdx::householder_tridiagonalize_parallel(m)));
}

BENCHMARK(BM_JacobiSerial)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JacobiParallel)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TridiagonalQLSerial)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TridiagonalQLParallel)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

const hdx::CsrMatrix& skeleton_csr() {
  static const hdx::CsrMatrix m = [] {
    const auto cc = hdx::build_complex(params(2, 2, 3));
    return hdx::normalized_adjacency_csr(hdx::one_skeleton(cc.complex));
  }();
  return m;
}

void BM_MatvecSerial(benchmark::State& state) {
  const auto& m = skeleton_csr();
  std::vector<double> x(m.n, 1.0), y(m.n);
  for (auto _ : state) {
    hdx::matvec_serial(m, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}
void BM_MatvecParallel(benchmark::State& state) {
  const auto& m = skeleton_csr();
  std::vector<double> x(m.n, 1.0), y(m.n);
  for (auto _ : state) {
    hdx::matvec_parallel(m, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_MatvecSerial);
BENCHMARK(BM_MatvecParallel);

void BM_ClosureSerial(benchmark::State& state) {
  const auto gens = hdx::k_generators(params(2, 2, 3), {});
  for (auto _ : state) benchmark::DoNotOptimize(hdx::bfs_closure_serial(gens).order());
}
void BM_ClosureParallel(benchmark::State& state) {
  const auto gens = hdx::k_generators(params(2, 2, 3), {});
  for (auto _ : state) benchmark::DoNotOptimize(hdx::bfs_closure(gens).order());
}
BENCHMARK(BM_ClosureSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosureParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
