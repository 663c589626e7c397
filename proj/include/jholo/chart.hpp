// Copyright the jholo authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#ifndef JHOLO_CHART_HPP
#define JHOLO_CHART_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jholo/numeric.hpp"

namespace jholo {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AxisInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool periodic = false;

  double width() const { return hi - lo; }
};

using MetricFn = std::function<Mat(const Vec&)>;

/// A single-chart manifold: a coordinate box with metric components given as
/// a smooth coordinate function, optionally a symplectic form and an almost
/// complex structure. Per-axis periodic flags; no atlas machinery.
struct ChartManifold {
  int dimension = 0;
  std::vector<AxisInterval> box;
  MetricFn metric_fn;
  std::optional<MetricFn> omega_fn;
  std::optional<MetricFn> J_fn;
  double fd_step = 1e-4;
  std::string name = "chart";

  Mat metric(const Vec& p) const { return metric_fn(p); }
  Mat metric_inverse(const Vec& p) const;

  /// Wraps periodic coordinates into the box; non-periodic axes untouched.
  Vec wrap(const Vec& p) const;

  /// Shortest coordinate difference a - b honoring periodic axes.
  Vec coord_delta(const Vec& a, const Vec& b) const;

  /// True when p keeps `margin` distance from every non-periodic box face.
  bool interior(const Vec& p, double margin) const;
  void require_interior(const Vec& p, double margin, const char* who) const;

  /// Checks metric symmetry/positive-definiteness and, when present,
  /// J^2 = -Id and antisymmetry of omega at p. Throws DomainError.
  void validate_at(const Vec& p) const;
};

/// g_J(v,w) = (omega(v,Jw) + omega(w,Jv)) / 2, the symmetrization of the
/// tame form omega(.,J.). Rejects points where J fails to tame omega.
MetricFn metric_from_omega_J(const MetricFn& omega_fn, const MetricFn& J_fn);

/// Single-point version returning the metric matrix at p.
Mat metric_from_omega_J_at(const Mat& omega, const Mat& J, const Vec& p);

}  // namespace jholo

#endif  // JHOLO_CHART_HPP
