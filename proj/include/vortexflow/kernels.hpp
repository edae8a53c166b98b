#pragma once

#include <cstddef>
#include <functional>

namespace vortexflow::kernels {

// Serial loops are the reference; Parallel runs the same loop body under OpenMP and must
// return bit-identical results (max/min reductions are order independent).
enum class Exec { Serial, Parallel };

struct Extremum {
  double value = 0.0;
  std::size_t index = 0;  // smallest index attaining the extremum
};

/// Maximum of fn(i) over i in [0, n). NaN values count as +infinity.
Extremum max_of(std::size_t n, const std::function<double(std::size_t)>& fn,
                Exec exec = Exec::Parallel);

/// Minimum of fn(i) over i in [0, n). NaN values count as -infinity.
Extremum min_of(std::size_t n, const std::function<double(std::size_t)>& fn,
                Exec exec = Exec::Parallel);

/// Calls body(i) for every i in [0, n); iterations must not share mutable state.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body,
                    Exec exec = Exec::Parallel);

}  // namespace vortexflow::kernels
