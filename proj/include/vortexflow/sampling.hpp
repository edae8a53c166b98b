#pragma once

#include <cstdint>
#include <vector>

namespace vortexflow {

// Radical-inverse (van der Corput) value of index in the given prime base, in [0, 1).
double radical_inverse(std::uint64_t index, unsigned base);

// Deterministic low-discrepancy point source. Point i of dimension d is
// radical_inverse(seed + i + 1, prime_d); the seed shifts the starting index so
// different seeds give disjoint, equally well-spread prefixes. Index 0 (the
// all-zeros point) is never produced.
class HaltonSequence {
 public:
  explicit HaltonSequence(std::uint64_t seed = 0) : seed_(seed) {}

  double coord(std::uint64_t i, unsigned dim) const;

  // n points mapped affinely into [lo, hi).
  std::vector<double> uniform(std::size_t n, double lo, double hi, unsigned dim = 0) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

// n+1 equally spaced nodes on [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t n_intervals);

// n points, geometrically spaced on [lo, hi], endpoints included (lo > 0).
std::vector<double> logspace(double lo, double hi, std::size_t n);

}  // namespace vortexflow
