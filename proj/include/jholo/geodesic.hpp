// Copyright the jholo authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#ifndef JHOLO_GEODESIC_HPP
#define JHOLO_GEODESIC_HPP

#include <optional>

#include "jholo/tensor.hpp"

namespace jholo {

struct GeodesicState {
  Vec position;
  Vec velocity;
  double t = 0.0;
};

struct JacobiState {
  Vec Z;
  Vec Zprime;  // covariant derivative along the base geodesic
};

/// Densely sampled geodesic (or any smooth path) with velocities.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> positions;
  std::vector<Vec> velocities;
  bool exited_chart = false;
  double speed_drift = 0.0;  // relative |g(v,v)| drift start to end

  const GeodesicState back_state() const {
    return {positions.back(), velocities.back(), times.back()};
  }
  /// Cubic Hermite interpolation of position/velocity at parameter t.
  void sample(double t, Vec& pos, Vec& vel) const;
  Trajectory reversed() const;
};

/// Geodesic acceleration -Gamma(x)(v,v).
Vec geodesic_acceleration(const ChartManifold& m, const Vec& x, const Vec& v);

/// Fixed-step RK4 integration of the geodesic equation. On chart exit the
/// partial trajectory is returned with exited_chart set.
Trajectory integrate_geodesic(const ChartManifold& m, const GeodesicState& initial,
                              double t_end, int steps);

/// Solves nabla_{gamma'} V = 0 along the trajectory; returns V at endpoint.
Vec parallel_transport(const ChartManifold& m, const Trajectory& traj, const Vec& v0);

/// Integrates Z'' + R(Z, gamma')gamma' = 0 along a unit-speed geodesic.
JacobiState integrate_jacobi(const ChartManifold& m, const Trajectory& traj,
                             const JacobiState& initial);

/// As integrate_jacobi but returns the whole Jacobi field sampled at the
/// trajectory times.
std::vector<JacobiState> integrate_jacobi_field(const ChartManifold& m, const Trajectory& traj,
                                                const JacobiState& initial);

struct ComparisonSolution {
  std::vector<double> t;
  std::vector<double> xi;
  std::vector<double> xi_prime;
};

/// Solution of xi'' - k xi = zeta, xi(0)=xi0, xi'(0)=xiprime0, k >= 0, by
/// the variation-of-parameters formula with cosh/sinh kernels evaluated by
/// cumulative quadrature. Exact for zeta = 0.
ComparisonSolution comparison_solution(double k, const std::function<double(double)>& zeta,
                                       double xi0, double xiprime0, double t_end,
                                       int n_samples = 257);

struct ShootingResult {
  bool converged = false;
  Vec initial_velocity;
  double length = 0.0;
  Trajectory trajectory;
};

/// Two-point geodesic by Newton shooting on the initial velocity. Suitable
/// for short arcs (tube scales); length is the g-length of the solution.
ShootingResult two_point_geodesic(const ChartManifold& m, const Vec& x, const Vec& y,
                                  int steps = 128, int max_iter = 60);

}  // namespace jholo

#endif  // JHOLO_GEODESIC_HPP
