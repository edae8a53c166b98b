#include "vortexflow/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "vortexflow/errors.hpp"

namespace vortexflow::quad {
namespace {

struct Panel {
  double lo, mid, hi;
  double f_lo, f_mid, f_hi;
  double whole;
};

double simpson(double lo, double hi, double f_lo, double f_mid, double f_hi) {
  return (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
}

double refine(const std::function<double(double)>& fn, const Panel& p, double tol, int depth,
              int max_depth) {
  const double left_mid = 0.5 * (p.lo + p.mid);
  const double right_mid = 0.5 * (p.mid + p.hi);
  const double f_lm = fn(left_mid);
  const double f_rm = fn(right_mid);
  const double left = simpson(p.lo, p.mid, p.f_lo, f_lm, p.f_mid);
  const double right = simpson(p.mid, p.hi, p.f_mid, f_rm, p.f_hi);
  const double delta = left + right - p.whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth >= max_depth) {
    throw NumericalToleranceError("adaptive Simpson: maximum depth reached on [" +
                                  std::to_string(p.lo) + ", " + std::to_string(p.hi) + "]");
  }
  const Panel lp{p.lo, left_mid, p.mid, p.f_lo, f_lm, p.f_mid, left};
  const Panel rp{p.mid, right_mid, p.hi, p.f_mid, f_rm, p.f_hi, right};
  return refine(fn, lp, 0.5 * tol, depth + 1, max_depth) +
         refine(fn, rp, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& fn, double lo, double hi,
                        const SimpsonOptions& opts) {
  if (lo == hi) return 0.0;
  if (!(std::isfinite(lo) && std::isfinite(hi))) {
    throw NumericalToleranceError("adaptive Simpson: non-finite interval");
  }
  // Coarse scale of the integral of |fn| from a 64-panel composite rule.
  constexpr int kCoarse = 64;
  const double h = (hi - lo) / kCoarse;
  double scale = 0.0;
  for (int i = 0; i <= kCoarse; ++i) {
    const double w = (i == 0 || i == kCoarse) ? 0.5 : 1.0;
    scale += w * std::abs(fn(lo + i * h));
  }
  scale *= std::abs(h);
  const double tol = std::max(opts.rel_tol * scale, opts.abs_floor);

  const double mid = 0.5 * (lo + hi);
  const double f_lo = fn(lo), f_mid = fn(mid), f_hi = fn(hi);
  const Panel root{lo, mid, hi, f_lo, f_mid, f_hi, simpson(lo, hi, f_lo, f_mid, f_hi)};
  const double result = refine(fn, root, tol, 0, opts.max_depth);
  if (!std::isfinite(result)) {
    throw NumericalToleranceError("adaptive Simpson: non-finite result");
  }
  return result;
}

void cumulative_integral(std::span<const double> y, double h, std::span<double> out) {
  const std::size_t n = y.size();
  if (n < 4 || out.size() != n) {
    throw std::invalid_argument("cumulative_integral: need at least 4 samples and matching output");
  }
  const double c = h / 24.0;
  out[0] = 0.0;
  out[1] = c * (9.0 * y[0] + 19.0 * y[1] - 5.0 * y[2] + y[3]);
  for (std::size_t i = 1; i + 2 < n; ++i) {
    out[i + 1] = out[i] + c * (-y[i - 1] + 13.0 * y[i] + 13.0 * y[i + 1] - y[i + 2]);
  }
  out[n - 1] = out[n - 2] + c * (y[n - 4] - 5.0 * y[n - 3] + 19.0 * y[n - 2] + 9.0 * y[n - 1]);
}

std::vector<double> cumulative_integral(std::span<const double> y, double h) {
  std::vector<double> out(y.size());
  cumulative_integral(y, h, out);
  return out;
}

}  // namespace vortexflow::quad
