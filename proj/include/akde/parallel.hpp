#pragma once

#include <cstddef>
#include <exception>
#include <limits>
#include <vector>

#ifdef AKDE_HAVE_OPENMP
#include <omp.h>
#endif

namespace akde {

enum class Execution { serial, openmp };

inline Execution default_execution() noexcept {
#ifdef AKDE_HAVE_OPENMP
  return Execution::openmp;
#else
  return Execution::serial;
#endif
}

// Runs body(i) for i in [0, n). Iterations must be independent; each one may
// only write state owned by its own index. If any iteration throws, the
// exception from the lowest index is rethrown after the loop drains.
template <class F>
void parallel_index(std::size_t n, Execution exec, F&& body) {
#ifdef AKDE_HAVE_OPENMP
  if (exec == Execution::openmp && n > 1) {
    std::exception_ptr first;
    std::size_t first_index = std::numeric_limits<std::size_t>::max();
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(akde_parallel_index_error)
        {
          if (static_cast<std::size_t>(i) < first_index) {
            first_index = static_cast<std::size_t>(i);
            first = std::current_exception();
          }
        }
      }
    }
    if (first) {
      std::rethrow_exception(first);
    }
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) {
    body(i);
  }
}

// Deterministic reduction: terms are summed serially inside fixed-size blocks
// and the block totals are merged in index order, so the result is bitwise
// identical for any worker count, including the serial path.
template <class F>
double blocked_sum(std::size_t n, Execution exec, F&& term,
                   std::size_t block_size = 2048) {
  if (n == 0) {
    return 0.0;
  }
  const std::size_t blocks = (n + block_size - 1) / block_size;
  std::vector<double> partial(blocks, 0.0);
  parallel_index(blocks, exec, [&](std::size_t b) {
    const std::size_t begin = b * block_size;
    const std::size_t end = begin + block_size < n ? begin + block_size : n;
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      s += term(i);
    }
    partial[b] = s;
  });
  double total = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    total += partial[b];
  }
  return total;
}

}  // namespace akde
