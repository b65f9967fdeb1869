#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace mpcp::num {

// Neumaier-compensated accumulator. The solver's invariants (monotone ascent
// with 1e-12 slack, unit norms to 1e-12) sit close enough to double epsilon
// that naive summation over ~1e6 terms would eat the whole budget.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

// Same compensation, element-wise over a vector (used for per-node gradient
// accumulation without allocating a second pass structure).
inline void add_compensated(double& sum, double& comp, double v) {
  double t = sum + v;
  if (std::abs(sum) >= std::abs(v))
    comp += (sum - t) + v;
  else
    comp += (v - t) + sum;
  sum = t;
}

// l_r norm, factored by the max entry so pow never sees an argument above 1.
inline double lp_norm(std::span<const double> v, double r) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return 0.0;
  Accumulator acc;
  for (double x : v) {
    double t = std::abs(x) / m;
    if (t > 0.0) acc.add(std::pow(t, r));
  }
  return m * std::pow(acc.value(), 1.0 / r);
}

inline double inf_norm_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace mpcp::num
