#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "oracle_detail.hpp"

namespace groupfair::detail {

namespace {

constexpr std::uint64_t kChunk = 4096;

void lower_to(std::atomic<std::uint64_t>& best, std::uint64_t value) {
  std::uint64_t cur = best.load(std::memory_order_relaxed);
  while (value < cur && !best.compare_exchange_weak(cur, value, std::memory_order_relaxed)) {
  }
}

}  // namespace

ScanResult scan_parallel(const SearchPlan& plan, int jobs) {
  const std::uint64_t total = plan.total();
  const std::uint64_t per = plan.allocations_per_partition;
  const std::int64_t chunks = static_cast<std::int64_t>((total + kChunk - 1) / kChunk);
  std::atomic<std::uint64_t> best{total};
  std::uint64_t examined = 0;

#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#else
  (void)jobs;
#endif

#pragma omp parallel num_threads(threads) reduction(+ : examined)
  {
    std::vector<Bundle> bundles;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
      const std::uint64_t end = std::min(total, begin + kChunk);
      for (std::uint64_t i = begin; i < end; ++i) {
        // Anything past the current best cannot change the answer.
        if (i >= best.load(std::memory_order_relaxed)) break;
        if (!plan.decode(i % per, bundles)) continue;
        ++examined;
        if (plan.all_fair(plan.partitions[i / per], bundles)) {
          lower_to(best, i);
          break;
        }
      }
    }
  }

  ScanResult res;
  if (best.load() < total) {
    res.first = best.load();
  } else {
    res.examined = examined;
  }
  return res;
}

}  // namespace groupfair::detail
