#pragma once

// Parallel min/argmin reduction over an index range.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace means_lab {

/// Worker count for grid sweeps: MEANS_LAB_THREADS if set to a positive
/// integer, otherwise the hardware concurrency.
inline unsigned sweep_threads() {
  if (const char* env = std::getenv("MEANS_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// One evaluated point of a sweep.
struct MarginSample {
  double margin = 0.0;
  bool escalated = false;  // re-evaluated in extended precision
};

struct SweepSummary {
  double min_margin = std::numeric_limits<double>::infinity();
  std::size_t argmin = 0;
  std::size_t escalated = 0;
  std::size_t below_floor = 0;  // 0 <= margin < floor
  std::size_t negative = 0;

  void add(std::size_t index, const MarginSample& s, double floor) {
    if (s.margin < min_margin || (s.margin == min_margin && index < argmin)) {
      min_margin = s.margin;
      argmin = index;
    }
    escalated += s.escalated;
    below_floor += (s.margin >= 0.0 && s.margin < floor);
    negative += (s.margin < 0.0);
  }

  void merge(const SweepSummary& o) {
    if (o.min_margin < min_margin || (o.min_margin == min_margin && o.argmin < argmin)) {
      min_margin = o.min_margin;
      argmin = o.argmin;
    }
    escalated += o.escalated;
    below_floor += o.below_floor;
    negative += o.negative;
  }
};

/// Evaluates `eval(i)` for i in [0, n) on up to sweep_threads() workers and
/// reduces to the minimal margin. Ties resolve to the smallest index, so the
/// result does not depend on the thread count.
template <class Eval>
SweepSummary sweep_min(std::size_t n, double floor, const Eval& eval) {
  const std::size_t workers = std::min<std::size_t>(sweep_threads(), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    SweepSummary s;
    for (std::size_t i = 0; i < n; ++i) s.add(i, eval(i), floor);
    return s;
  }
  std::vector<SweepSummary> partial(workers);
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          const std::size_t begin = n * w / workers;
          const std::size_t end = n * (w + 1) / workers;
          for (std::size_t i = begin; i < end; ++i) partial[w].add(i, eval(i), floor);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  SweepSummary total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace means_lab
