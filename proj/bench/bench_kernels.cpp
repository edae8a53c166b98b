// Serial reference against the OpenMP kernels on the three sampling-heavy workloads.
//
//   bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include <omp.h>

#include "vortexflow/admissibility.hpp"
#include "vortexflow/analysis.hpp"

namespace vf = vortexflow;
using vf::kernels::Exec;

namespace {

double seconds(const std::function<void()>& fn, int repeats) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

template <class Run>
void compare(const char* name, Run run, int repeats) {
  decltype(run(Exec::Serial)) serial, parallel;
  const double ts = seconds([&] { serial = run(Exec::Serial); }, repeats);
  const double tp = seconds([&] { parallel = run(Exec::Parallel); }, repeats);
  std::printf("%-22s serial %9.4f s  parallel %9.4f s  speedup %5.2f  identical %s\n", name, ts,
              tp, ts / tp, serial == parallel ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d\n", omp_get_max_threads());
  const auto example = vf::example_model(0.02);
  const auto constantin = vf::constantin_model();

  compare("sandwich grid", [&](Exec e) {
    return vf::check_level_set_sandwich(example, {0, e}).witnesses;
  }, repeats);
  compare("growth sampling", [&](Exec e) {
    std::vector<std::pair<std::string, double>> w;
    for (double a : {1.0, 10.0, 100.0}) {
      for (const auto& kv : vf::check_growth(example, a, {0, e}).witnesses) w.push_back(kv);
      for (const auto& kv : vf::check_lipschitz(example, a, {0, e}).witnesses) w.push_back(kv);
    }
    return w;
  }, repeats);
  compare("ring-bound sampling", [&](Exec e) {
    return vf::check_ring_bound(example, {0, e}).witnesses;
  }, repeats);
  compare("shot classification", [&](Exec e) {
    std::vector<double> out;
    for (const auto& s : vf::classify_batch(constantin, vf::default_shooting_grid(), e)) {
      out.push_back(static_cast<double>(s.outcome));
      out.push_back(s.min_R);
    }
    return out;
  }, 1);
  return 0;
}
