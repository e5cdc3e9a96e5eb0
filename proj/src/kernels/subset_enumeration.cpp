#include <algorithm>

#include <omp.h>

#include "cvp/kernels.hpp"

namespace cvp::kernels {

std::vector<std::uint64_t> filter_supersets(std::size_t n, std::uint64_t anchor,
                                            const std::function<bool(std::uint64_t)>& pred, Execution exec) {
  // Free bits are enumerated as a dense counter and spread over the mask.
  std::vector<std::size_t> free_bits;
  for (std::size_t i = 0; i < n; ++i)
    if (!(anchor >> i & 1u)) free_bits.push_back(i);
  const std::uint64_t count = std::uint64_t{1} << free_bits.size();
  auto expand = [&](std::uint64_t k) {
    std::uint64_t mask = anchor;
    for (std::size_t b = 0; b < free_bits.size(); ++b)
      if (k >> b & 1u) mask |= std::uint64_t{1} << free_bits[b];
    return mask;
  };

  std::vector<std::uint64_t> out;
  if (exec == Execution::Serial) {
    for (std::uint64_t k = 0; k < count; ++k) {
      const auto mask = expand(k);
      if (pred(mask)) out.push_back(mask);
    }
  } else {
    std::vector<std::vector<std::uint64_t>> local(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
    {
      auto& sink = local[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t k = 0; k < static_cast<std::int64_t>(count); ++k) {
        const auto mask = expand(static_cast<std::uint64_t>(k));
        if (pred(mask)) sink.push_back(mask);
      }
    }
    for (auto& v : local) out.insert(out.end(), v.begin(), v.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cvp::kernels
