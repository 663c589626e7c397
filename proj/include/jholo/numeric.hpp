// Copyright the jholo authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#ifndef JHOLO_NUMERIC_HPP
#define JHOLO_NUMERIC_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace jholo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace fd {

/// Central difference of a vector->matrix map along coordinate axis.
template <typename F>
auto partial(const F& fn, const Vec& p, int axis, double step) {
  Vec hi = p, lo = p;
  hi[axis] += step;
  lo[axis] -= step;
  return ((fn(hi) - fn(lo)) / (2.0 * step)).eval();
}

/// Nested central second difference along two axes.
template <typename F>
auto partial2(const F& fn, const Vec& p, int axis_a, int axis_b, double step) {
  auto inner = [&](const Vec& q) { return partial(fn, q, axis_b, step); };
  return partial(inner, p, axis_a, step);
}

}  // namespace fd

namespace quad {

/// Composite Simpson on [a,b] with n intervals (n made even).
template <typename F>
double simpson(const F& fn, double a, double b, int n) {
  if (n % 2) ++n;
  if (n < 2) n = 2;
  const double h = (b - a) / n;
  double acc = fn(a) + fn(b);
  for (int i = 1; i < n; ++i) acc += fn(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

struct Result {
  double value = 0.0;
  int intervals = 0;
  bool converged = false;
};

/// Simpson with interval doubling until successive values agree within tol
/// (absolute + relative), capped at max_n intervals.
template <typename F>
Result adaptive(const F& fn, double a, double b, double tol,
                int start_n = 16, int max_n = 1 << 22) {
  Result r;
  double prev = simpson(fn, a, b, start_n);
  for (int n = 2 * start_n; n <= max_n; n *= 2) {
    const double cur = simpson(fn, a, b, n);
    if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) {
      r.value = cur;
      r.intervals = n;
      r.converged = true;
      return r;
    }
    prev = cur;
  }
  r.value = prev;
  r.intervals = max_n;
  return r;
}

/// Cumulative Simpson antiderivative samples of fn on [0, t_end]:
/// returns F[i] = integral of fn over [0, grid[i]] on a uniform grid of
/// n_samples points (n_samples >= 2, refined internally by factor 4).
std::vector<double> cumulative(const std::function<double(double)>& fn,
                               double t_end, int n_samples);

}  // namespace quad

/// Deterministic Halton low-discrepancy sequence in [0,1]^dim.
class HaltonSweep {
 public:
  explicit HaltonSweep(int dim);
  Vec next();

 private:
  std::vector<int> bases_;
  std::uint64_t index_ = 1;
};

/// Quintic smoothstep: 0 for s<=0, 1 for s>=1, 6s^5-15s^4+10s^3 between.
/// Max |second derivative| on [0,1] is 10/sqrt(3) < 6.
double smoothstep(double s);

/// sqrt(k)*coth(sqrt(k)*x) with the continuous k->0 limit 1/x + k*x/3.
double sqrtk_coth(double k, double x);

/// (1/sqrt(k))*arccot(h/sqrt(k)) with the continuous k->0 limit 1/h.
double inv_sqrtk_arccot(double k, double h);

}  // namespace jholo

#endif  // JHOLO_NUMERIC_HPP
