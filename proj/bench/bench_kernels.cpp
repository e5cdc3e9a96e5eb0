// Serial reference against the OpenMP kernels.
//   ./bench_kernels --benchmark_filter=Support
// CVP_THREADS caps the parallel runs.

#include <benchmark/benchmark.h>

#include <random>

#include "cvp/continuum.hpp"
#include "cvp/core_model.hpp"
#include "cvp/dependence.hpp"
#include "cvp/index_set.hpp"
#include "cvp/kernels.hpp"
#include "cvp/parallel.hpp"

using namespace cvp;

namespace {

Matrix random_lagrangian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix B(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < B.rows(); ++i)
    for (Eigen::Index j = 0; j < B.cols(); ++j) B(i, j) = u(rng) < 0.4 ? 0.0 : u(rng);
  Matrix L = B * B.transpose() / static_cast<double>(n);
  L.diagonal().array() += 0.5;
  return L;
}

void support_enum(benchmark::State& st, Execution exec) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const Matrix L = random_lagrangian(n, 7);
  const Vector phi = Vector::Constant(static_cast<Eigen::Index>(n), 0.3);
  const double rank_tol = 1e-10 * L.norm();
  for (auto _ : st) {
    auto c = kernels::support_candidates(L, phi, rank_tol, kTol, exec);
    benchmark::DoNotOptimize(c);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>((std::uint64_t{1} << n) - 1));
}

void subset_filter(benchmark::State& st, Execution exec) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto inst = circle_instance(CircleDiscretization(n), true, 0.0);
  const InitialData init = InitialData::empty(n);
  for (auto _ : st) {
    auto m = kernels::filter_supersets(
        n, 0, [&](std::uint64_t mask) { return certify_dependent(mask_to_set(mask), init, inst).certified_dependent; },
        exec);
    benchmark::DoNotOptimize(m);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(std::uint64_t{1} << n));
}

}  // namespace

BENCHMARK_CAPTURE(support_enum, serial, Execution::Serial)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(support_enum, parallel, Execution::Parallel)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(subset_filter, serial, Execution::Serial)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(subset_filter, parallel, Execution::Parallel)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  set_thread_count(threads_from_environment());
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
