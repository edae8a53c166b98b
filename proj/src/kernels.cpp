#include "vortexflow/kernels.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <omp.h>

namespace vortexflow::kernels {
namespace {

// Combine rule shared by both paths: larger value wins, ties go to the smaller index.
inline void take_max(Extremum& best, double v, std::size_t i) {
  if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
  if (v > best.value || (v == best.value && i < best.index)) best = {v, i};
}

Extremum serial_max(std::size_t n, const std::function<double(std::size_t)>& fn) {
  Extremum best{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < n; ++i) take_max(best, fn(i), i);
  return best;
}

Extremum parallel_max(std::size_t n, const std::function<double(std::size_t)>& fn) {
  const int threads = omp_get_max_threads();
  std::vector<Extremum> partial(threads, {-std::numeric_limits<double>::infinity(), 0});
#pragma omp parallel num_threads(threads)
  {
    Extremum& mine = partial[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      take_max(mine, fn(static_cast<std::size_t>(i)), static_cast<std::size_t>(i));
    }
  }
  Extremum best{-std::numeric_limits<double>::infinity(), 0};
  for (const auto& p : partial) take_max(best, p.value, p.index);
  return best;
}

}  // namespace

Extremum max_of(std::size_t n, const std::function<double(std::size_t)>& fn, Exec exec) {
  return exec == Exec::Serial ? serial_max(n, fn) : parallel_max(n, fn);
}

Extremum min_of(std::size_t n, const std::function<double(std::size_t)>& fn, Exec exec) {
  const auto neg = [&fn](std::size_t i) { return -fn(i); };
  Extremum e = max_of(n, neg, exec);
  e.value = -e.value;
  return e;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Exec exec) {
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    body(static_cast<std::size_t>(i));
  }
}

}  // namespace vortexflow::kernels
