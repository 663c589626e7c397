// Copyright the jholo authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#include "jholo/geodesic.hpp"

namespace jholo {

void Trajectory::sample(double t, Vec& pos, Vec& vel) const {
  const double t0 = times.front(), t1 = times.back();
  if (t <= t0) {
    pos = positions.front();
    vel = velocities.front();
    return;
  }
  if (t >= t1) {
    pos = positions.back();
    vel = velocities.back();
    return;
  }
  const int n = static_cast<int>(times.size());
  const double dt = (t1 - t0) / (n - 1);
  int i = std::min(static_cast<int>((t - t0) / dt), n - 2);
  const double h = times[i + 1] - times[i];
  const double s = (t - times[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  pos = h00 * positions[i] + h10 * h * velocities[i] + h01 * positions[i + 1] +
        h11 * h * velocities[i + 1];
  const double d00 = (6 * s2 - 6 * s) / h, d10 = 3 * s2 - 4 * s + 1;
  const double d01 = (-6 * s2 + 6 * s) / h, d11 = 3 * s2 - 2 * s;
  vel = d00 * positions[i] + d10 * velocities[i] + d01 * positions[i + 1] +
        d11 * velocities[i + 1];
}

Trajectory Trajectory::reversed() const {
  Trajectory r;
  const int n = static_cast<int>(times.size());
  r.times.resize(n);
  r.positions.resize(n);
  r.velocities.resize(n);
  const double t0 = times.front(), t1 = times.back();
  for (int i = 0; i < n; ++i) {
    r.times[i] = t0 + (t1 - times[n - 1 - i]);
    r.positions[i] = positions[n - 1 - i];
    r.velocities[i] = -velocities[n - 1 - i];
  }
  r.exited_chart = exited_chart;
  return r;
}

Vec geodesic_acceleration(const ChartManifold& m, const Vec& x, const Vec& v) {
  const MultiArray gam = christoffel(m, x);
  const int n = m.dimension;
  Vec a = Vec::Zero(n);
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += gam.at({k, i, j}) * v[i] * v[j];
    a[k] = -s;
  }
  return a;
}

Trajectory integrate_geodesic(const ChartManifold& m, const GeodesicState& initial,
                              double t_end, int steps) {
  if (steps < 1) throw NumericError("integrate_geodesic: steps >= 1 required");
  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.positions.reserve(steps + 1);
  traj.velocities.reserve(steps + 1);

  const double margin = 2.0 * m.fd_step;
  Vec x = initial.position, v = initial.velocity;
  double t = initial.t;
  traj.times.push_back(t);
  traj.positions.push_back(x);
  traj.velocities.push_back(v);

  const double h = t_end / steps;
  auto acc = [&](const Vec& q, const Vec& u) { return geodesic_acceleration(m, q, u); };

  for (int i = 0; i < steps; ++i) {
    if (!m.interior(x, margin + std::abs(h) * v.lpNorm<Eigen::Infinity>())) {
      traj.exited_chart = true;
      break;
    }
    const Vec k1x = v, k1v = acc(x, v);
    const Vec k2x = v + 0.5 * h * k1v, k2v = acc(x + 0.5 * h * k1x, v + 0.5 * h * k1v);
    const Vec k3x = v + 0.5 * h * k2v, k3v = acc(x + 0.5 * h * k2x, v + 0.5 * h * k2v);
    const Vec k4x = v + h * k3v, k4v = acc(x + h * k3x, v + h * k3v);
    x += h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
    v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    t += h;
    traj.times.push_back(t);
    traj.positions.push_back(x);
    traj.velocities.push_back(v);
  }

  const double sp0 = initial.velocity.dot(m.metric(initial.position) * initial.velocity);
  const double sp1 = traj.velocities.back().dot(m.metric(traj.positions.back()) * traj.velocities.back());
  traj.speed_drift = (sp0 > 1e-300) ? std::abs(sp1 - sp0) / sp0 : 0.0;
  return traj;
}

namespace {

// RK4 on a vector field equation V' = rhs(t, V) along a stored trajectory.
Vec transport_rk4(const ChartManifold& m, const Trajectory& traj, const Vec& v0,
                  const std::function<Vec(const Vec&, const Vec&, const Vec&)>& rhs_at,
                  std::vector<Vec>* samples_out = nullptr) {
  const int n = static_cast<int>(traj.times.size());
  Vec V = v0;
  if (samples_out) {
    samples_out->clear();
    samples_out->push_back(V);
  }
  for (int i = 0; i + 1 < n; ++i) {
    const double h = traj.times[i + 1] - traj.times[i];
    Vec xm, vm;
    traj.sample(traj.times[i] + 0.5 * h, xm, vm);
    const Vec& x0 = traj.positions[i];
    const Vec& u0 = traj.velocities[i];
    const Vec& x1 = traj.positions[i + 1];
    const Vec& u1 = traj.velocities[i + 1];

    const Vec k1 = rhs_at(x0, u0, V);
    const Vec k2 = rhs_at(xm, vm, V + 0.5 * h * k1);
    const Vec k3 = rhs_at(xm, vm, V + 0.5 * h * k2);
    const Vec k4 = rhs_at(x1, u1, V + h * k3);
    V += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    if (samples_out) samples_out->push_back(V);
  }
  return V;
}

}  // namespace

Vec parallel_transport(const ChartManifold& m, const Trajectory& traj, const Vec& v0) {
  auto rhs = [&m](const Vec& x, const Vec& u, const Vec& V) {
    const MultiArray gam = christoffel(m, x);
    const int n = static_cast<int>(x.size());
    Vec r = Vec::Zero(n);
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += gam.at({k, i, j}) * u[i] * V[j];
      r[k] = -s;
    }
    return r;
  };
  return transport_rk4(m, traj, v0, rhs);
}

namespace {

std::vector<JacobiState> jacobi_rk4(const ChartManifold& m, const Trajectory& traj,
                                    const JacobiState& initial, bool keep_all) {
  const int dim = m.dimension;
  // state (Z, W) packed; coordinate derivatives recovered from covariant ones
  auto rhs = [&m, dim](const Vec& x, const Vec& u, const Vec& ZW) {
    const MultiArray gam = christoffel(m, x);
    const MultiArray riem = riemann_curvature(m, x);
    const Vec Z = ZW.head(dim), W = ZW.tail(dim);
    auto gam_uv = [&](const Vec& a, const Vec& b) {
      Vec r = Vec::Zero(dim);
      for (int k = 0; k < dim; ++k) {
        double s = 0.0;
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) s += gam.at({k, i, j}) * a[i] * b[j];
        r[k] = s;
      }
      return r;
    };
    Vec out(2 * dim);
    out.head(dim) = W - gam_uv(u, Z);
    out.tail(dim) = -gam_uv(u, W) - curvature_apply(riem, Z, u, u);
    return out;
  };

  const int n = static_cast<int>(traj.times.size());
  Vec ZW(2 * dim);
  ZW.head(dim) = initial.Z;
  ZW.tail(dim) = initial.Zprime;
  std::vector<JacobiState> out;
  if (keep_all) out.push_back(initial);

  for (int i = 0; i + 1 < n; ++i) {
    const double h = traj.times[i + 1] - traj.times[i];
    Vec xm, vm;
    traj.sample(traj.times[i] + 0.5 * h, xm, vm);
    const Vec k1 = rhs(traj.positions[i], traj.velocities[i], ZW);
    const Vec k2 = rhs(xm, vm, ZW + 0.5 * h * k1);
    const Vec k3 = rhs(xm, vm, ZW + 0.5 * h * k2);
    const Vec k4 = rhs(traj.positions[i + 1], traj.velocities[i + 1], ZW + h * k3);
    ZW += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    if (keep_all) out.push_back({ZW.head(dim), ZW.tail(dim)});
  }
  if (!keep_all) out.push_back({ZW.head(dim), ZW.tail(dim)});
  return out;
}

}  // namespace

JacobiState integrate_jacobi(const ChartManifold& m, const Trajectory& traj,
                             const JacobiState& initial) {
  return jacobi_rk4(m, traj, initial, false).back();
}

std::vector<JacobiState> integrate_jacobi_field(const ChartManifold& m, const Trajectory& traj,
                                                const JacobiState& initial) {
  return jacobi_rk4(m, traj, initial, true);
}

ComparisonSolution comparison_solution(double k, const std::function<double(double)>& zeta,
                                       double xi0, double xiprime0, double t_end,
                                       int n_samples) {
  if (k < 0.0) throw DomainError("comparison_solution: k < 0 unsupported");
  if (n_samples < 2) n_samples = 2;

  ComparisonSolution sol;
  sol.t.resize(n_samples);
  sol.xi.resize(n_samples);
  sol.xi_prime.resize(n_samples);
  for (int i = 0; i < n_samples; ++i) sol.t[i] = t_end * i / (n_samples - 1);

  if (k < 1e-12) {
    // xi'' = zeta
    auto I0 = quad::cumulative(zeta, t_end, n_samples);
    auto I1 = quad::cumulative([&](double s) { return s * zeta(s); }, t_end, n_samples);
    for (int i = 0; i < n_samples; ++i) {
      const double t = sol.t[i];
      sol.xi[i] = xi0 + xiprime0 * t + t * I0[i] - I1[i];
      sol.xi_prime[i] = xiprime0 + I0[i];
    }
    return sol;
  }

  const double sk = std::sqrt(k);
  auto f1 = [sk](double t) { return std::cosh(sk * t); };
  auto f2 = [sk](double t) { return std::sinh(sk * t); };
  auto If1z = quad::cumulative([&](double s) { return f1(s) * zeta(s); }, t_end, n_samples);
  auto If2z = quad::cumulative([&](double s) { return f2(s) * zeta(s); }, t_end, n_samples);

  const double a1 = xi0, a2 = xiprime0 / sk;
  for (int i = 0; i < n_samples; ++i) {
    const double t = sol.t[i];
    sol.xi[i] = a1 * f1(t) + a2 * f2(t) + (f2(t) * If1z[i] - f1(t) * If2z[i]) / sk;
    sol.xi_prime[i] = sk * (a1 * f2(t) + a2 * f1(t)) + (f1(t) * If1z[i] - f2(t) * If2z[i]);
  }
  return sol;
}

ShootingResult two_point_geodesic(const ChartManifold& m, const Vec& x, const Vec& y,
                                  int steps, int max_iter) {
  const int n = m.dimension;
  ShootingResult res;
  Vec v = m.coord_delta(y, x);

  auto endpoint_gap = [&](const Vec& vel) -> Vec {
    Trajectory tr = integrate_geodesic(m, {x, vel, 0.0}, 1.0, steps);
    if (tr.exited_chart) return Vec::Constant(n, 1e6);
    return m.coord_delta(tr.positions.back(), y);
  };

  Vec gap = endpoint_gap(v);
  double gn = gap.norm();
  for (int it = 0; it < max_iter && gn > 1e-13; ++it) {
    Mat Jac(n, n);
    const double fs = 1e-6 * (1.0 + v.norm());
    for (int j = 0; j < n; ++j) {
      Vec vp = v, vm_ = v;
      vp[j] += fs;
      vm_[j] -= fs;
      Jac.col(j) = (endpoint_gap(vp) - endpoint_gap(vm_)) / (2.0 * fs);
    }
    const Vec dv = Jac.fullPivLu().solve(gap);
    double damp = 1.0;
    for (int half = 0; half < 12; ++half) {
      const Vec v_try = v - damp * dv;
      const Vec g_try = endpoint_gap(v_try);
      if (g_try.norm() < gn) {
        v = v_try;
        gap = g_try;
        gn = gap.norm();
        break;
      }
      damp *= 0.5;
      if (half == 11) it = max_iter;  // stalled
    }
  }

  res.converged = gn <= 1e-10;
  res.initial_velocity = v;
  res.trajectory = integrate_geodesic(m, {x, v, 0.0}, 1.0, steps);
  res.length = std::sqrt(std::max(0.0, v.dot(m.metric(x) * v)));
  return res;
}

}  // namespace jholo
