#include "vortexflow/sampling.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace vortexflow {

double radical_inverse(std::uint64_t index, unsigned base) {
  const double inv_base = 1.0 / base;
  double inv = inv_base;
  double result = 0.0;
  while (index > 0) {
    result += static_cast<double>(index % base) * inv;
    index /= base;
    inv *= inv_base;
  }
  return result;
}

double HaltonSequence::coord(std::uint64_t i, unsigned dim) const {
  static constexpr std::array<unsigned, 8> kPrimes{2, 3, 5, 7, 11, 13, 17, 19};
  if (dim >= kPrimes.size()) throw std::out_of_range("HaltonSequence: dimension too large");
  return radical_inverse(seed_ + i + 1, kPrimes[dim]);
}

std::vector<double> HaltonSequence::uniform(std::size_t n, double lo, double hi,
                                            unsigned dim) const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * coord(i, dim);
  return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n_intervals) {
  std::vector<double> out(n_intervals + 1);
  const double h = (hi - lo) / static_cast<double>(n_intervals);
  for (std::size_t i = 0; i <= n_intervals; ++i) out[i] = lo + h * static_cast<double>(i);
  out.back() = hi;
  return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || n < 2) throw std::invalid_argument("logspace: need lo > 0 and n >= 2");
  std::vector<double> out(n);
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo * std::exp(step * static_cast<double>(i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace vortexflow
