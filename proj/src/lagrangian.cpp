// Copyright the jholo authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#include "jholo/lagrangian.hpp"

#include <algorithm>

#include <Eigen/SVD>

namespace jholo {

Mat LagrangianEmbedding::differential(const Vec& s) const {
  const int amb = ambient.dimension;
  Mat d(amb, l_dimension);
  for (int c = 0; c < l_dimension; ++c) d.col(c) = fd::partial(param_fn, s, c, fd_step);
  return d;
}

Mat LagrangianEmbedding::tangent_frame(const Vec& s) const {
  const Mat d = differential(s);
  const Mat g = ambient.metric(param_fn(s));
  Mat frame(d.rows(), d.cols());
  for (int c = 0; c < d.cols(); ++c) {
    Vec v = d.col(c);
    for (int b = 0; b < c; ++b) v -= frame.col(b).dot(g * v) * frame.col(b);
    const double nrm = std::sqrt(v.dot(g * v));
    if (nrm < 1e-10) throw DomainError("degenerate embedding frame on " + name);
    frame.col(c) = v / nrm;
  }
  return frame;
}

void LagrangianEmbedding::validate_at(const Vec& s) const {
  const Mat d = differential(s);
  Eigen::JacobiSVD<Mat> svd(d);
  if (svd.singularValues().tail(1)(0) < 1e-8)
    throw DomainError("embedding differential rank-deficient on " + name);
  if (ambient.omega_fn) {
    if (2 * l_dimension != ambient.dimension)
      throw DomainError("Lagrangian check requires half-dimensional submanifold");
    const Mat om = (*ambient.omega_fn)(param_fn(s));
    const Mat pullback = d.transpose() * om * d;
    if (pullback.cwiseAbs().maxCoeff() > 1e-10)
      throw DomainError("omega does not vanish on " + name + ": not Lagrangian");
  }
}

Vec LagrangianEmbedding::normal_projection(const Vec& s, const Vec& x) const {
  const Mat frame = tangent_frame(s);
  const Mat g = ambient.metric(param_fn(s));
  Vec out = x;
  for (int a = 0; a < frame.cols(); ++a) out -= frame.col(a).dot(g * x) * frame.col(a);
  return out;
}

namespace {

// Coefficients of an ambient tangent vector in the coordinate tangent basis.
Vec tangent_coefficients(const LagrangianEmbedding& lag, const Vec& s, const Vec& v) {
  const Mat d = lag.differential(s);
  const Mat g = lag.ambient.metric(lag.param_fn(s));
  const Mat gram = d.transpose() * g * d;
  const Vec rhs = d.transpose() * g * v;
  Eigen::JacobiSVD<Mat> svd(gram);
  const double cond = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
  if (!(cond < 1e10)) throw DomainError("degenerate tangent frame on " + lag.name);
  return gram.ldlt().solve(rhs);
}

}  // namespace

Vec second_fundamental_form(const LagrangianEmbedding& lag, const Vec& s,
                            const Vec& v, const Vec& w) {
  const int n = lag.l_dimension;
  const Vec p = lag.param_fn(s);
  const Mat d = lag.differential(s);
  const MultiArray gam = christoffel(lag.ambient, p);

  const Vec a = tangent_coefficients(lag, s, v);
  const Vec b = tangent_coefficients(lag, s, w);

  const int amb = lag.ambient.dimension;
  Vec total = Vec::Zero(amb);
  for (int c = 0; c < n; ++c)
    for (int e = 0; e < n; ++e) {
      const double coef = a[c] * b[e];
      if (coef == 0.0) continue;
      const Vec d2 = fd::partial2(lag.param_fn, s, c, e, lag.fd_step);
      Vec gterm = Vec::Zero(amb);
      for (int k = 0; k < amb; ++k) {
        double acc = 0.0;
        for (int i = 0; i < amb; ++i)
          for (int j = 0; j < amb; ++j) acc += gam.at({k, i, j}) * d(i, c) * d(j, e);
        gterm[k] = acc;
      }
      total += coef * (d2 + gterm);
    }
  return lag.normal_projection(s, total);
}

Vec shape_operator(const LagrangianEmbedding& lag, const Vec& s,
                   const Vec& nu, const Vec& v) {
  const Mat d = lag.differential(s);
  const Mat g = lag.ambient.metric(lag.param_fn(s));
  const int n = lag.l_dimension;
  const Mat gram = d.transpose() * g * d;
  Vec rhs(n);
  for (int c = 0; c < n; ++c) rhs[c] = second_fundamental_form(lag, s, v, d.col(c)).dot(g * nu);
  const Vec coef = gram.ldlt().solve(rhs);
  return d * coef;
}

Vec normal_exponential(const LagrangianEmbedding& lag, const Vec& s,
                       const Vec& normal, double t, int steps) {
  const Vec p = lag.param_fn(s);
  Trajectory traj = integrate_geodesic(lag.ambient, {p, normal, 0.0}, t, steps);
  if (traj.exited_chart) throw DomainError("normal_exponential: geodesic exited chart");
  return traj.positions.back();
}

namespace {

// Newton solve of exp_{f(s)}(sum tau_a N_a(s)) = p in the unknowns (s, tau),
// with N the orthonormal complement completion of the tangent frame.
struct TubeShot {
  bool converged = false;
  Vec s;
  Vec tau;
  Vec velocity;
  double dist = 0.0;
};

Mat normal_frame_complement(const LagrangianEmbedding& lag, const Vec& s) {
  const Vec p = lag.param_fn(s);
  const Mat g = lag.ambient.metric(p);
  const Mat tf = lag.tangent_frame(s);
  const int amb = lag.ambient.dimension;
  const int n = lag.l_dimension;
  Mat nf(amb, amb - n);
  int found = 0;
  for (int axis = 0; axis < amb && found < amb - n; ++axis) {
    Vec v = Vec::Zero(amb);
    v[axis] = 1.0;
    for (int a = 0; a < n; ++a) v -= tf.col(a).dot(g * v) * tf.col(a);
    for (int b = 0; b < found; ++b) v -= nf.col(b).dot(g * v) * nf.col(b);
    const double nrm = std::sqrt(std::max(0.0, v.dot(g * v)));
    if (nrm > 1e-6) nf.col(found++) = v / nrm;
  }
  if (found < amb - n) throw DomainError("failed to complete normal frame on " + lag.name);
  return nf;
}

TubeShot refine_nearest(const LagrangianEmbedding& lag, const Vec& p,
                        const Vec& s0, int iters, int steps) {
  const int n = lag.l_dimension;
  const int amb = lag.ambient.dimension;
  const int fib = amb - n;

  auto shoot = [&](const Vec& st) -> Vec {
    const Vec s = st.head(n);
    const Vec tau = st.tail(fib);
    const Mat nf = normal_frame_complement(lag, s);
    const Vec vel = nf * tau;
    Trajectory tr = integrate_geodesic(lag.ambient, {lag.param_fn(s), vel, 0.0}, 1.0, steps);
    return lag.ambient.coord_delta(tr.positions.back(), p);
  };

  Vec st(amb);
  st.head(n) = s0;
  {
    const Vec base = lag.param_fn(s0);
    const Mat g = lag.ambient.metric(base);
    const Mat nf = normal_frame_complement(lag, s0);
    const Vec gap = lag.ambient.coord_delta(p, base);
    st.tail(fib) = nf.transpose() * g * gap;
  }

  Vec gap = shoot(st);
  double gn = gap.norm();
  for (int it = 0; it < iters && gn > 1e-12; ++it) {
    Mat J(amb, amb);
    const double fs = 1e-6 * (1.0 + st.norm());
    for (int j = 0; j < amb; ++j) {
      Vec hi = st, lo = st;
      hi(j) += fs;
      lo(j) -= fs;
      J.col(j) = (shoot(hi) - shoot(lo)) / (2.0 * fs);
    }
    const Vec dstep = J.fullPivLu().solve(gap);
    double damp = 1.0;
    bool improved = false;
    for (int half = 0; half < 10; ++half) {
      const Vec trial = st - damp * dstep;
      const Vec gt = shoot(trial);
      if (gt.norm() < gn) {
        st = trial;
        gap = gt;
        gn = gap.norm();
        improved = true;
        break;
      }
      damp *= 0.5;
    }
    if (!improved) break;
  }

  TubeShot out;
  out.converged = gn <= 1e-9;
  out.s = st.head(n);
  out.tau = st.tail(fib);
  out.dist = st.tail(fib).norm();
  const Mat nf = normal_frame_complement(lag, out.s);
  out.velocity = nf * out.tau;
  return out;
}

}  // namespace

NearestPointReport distance_to_submanifold(const LagrangianEmbedding& lag, const Vec& p,
                                           int grid_per_dim, int newton_iters) {
  const int n = lag.l_dimension;
  if (n > 2) throw DomainError("distance_to_submanifold: parameter dimension > 2 unsupported");

  // coarse sweep on coordinate distance
  std::vector<Vec> grid_pts;
  std::vector<double> grid_val;
  std::vector<int> counts(n, grid_per_dim);
  std::vector<int> idx(n, 0);
  auto param_at = [&](const std::vector<int>& ii) {
    Vec s(n);
    for (int d = 0; d < n; ++d) {
      const auto& ax = lag.l_box[d];
      const double frac = ax.periodic ? (double(ii[d]) / counts[d])
                                      : (counts[d] == 1 ? 0.5 : double(ii[d]) / (counts[d] - 1));
      s[d] = ax.lo + frac * ax.width();
    }
    return s;
  };
  while (true) {
    const Vec s = param_at(idx);
    grid_pts.push_back(s);
    grid_val.push_back(lag.ambient.coord_delta(lag.param_fn(s), p).norm());
    int k = n - 1;
    while (k >= 0 && ++idx[k] == counts[k]) idx[k--] = 0;
    if (k < 0) break;
  }

  // local minima in the grid graph (cap the candidate count)
  std::vector<int> order(grid_pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return grid_val[a] < grid_val[b]; });

  NearestPointReport report;
  for (int rank = 0; rank < static_cast<int>(order.size()) && report.candidates.size() < 6; ++rank) {
    const Vec s0 = grid_pts[order[rank]];
    bool near_existing = false;
    for (const auto& c : report.candidates) {
      if ((c.l_point - s0).norm() < 3.0 * lag.l_box[0].width() / grid_per_dim) near_existing = true;
    }
    if (near_existing && rank > 0) continue;
    if (rank > 8) break;

    TubeShot shot = refine_nearest(lag, p, s0, newton_iters, 128);
    if (!shot.converged) continue;
    bool duplicate = false;
    for (const auto& c : report.candidates)
      if ((c.l_point - shot.s).norm() < 1e-6) duplicate = true;
    if (duplicate) continue;

    NearestPoint np;
    np.converged = true;
    np.distance = shot.dist;
    np.l_point = shot.s;
    np.foot = lag.param_fn(shot.s);
    np.initial_velocity = shot.velocity;
    report.candidates.push_back(np);
  }

  if (report.candidates.empty())
    throw DomainError("distance_to_submanifold: no minimum found inside window");

  std::sort(report.candidates.begin(), report.candidates.end(),
            [](const NearestPoint& a, const NearestPoint& b) { return a.distance < b.distance; });
  report.best = report.candidates.front();
  for (std::size_t i = 1; i < report.candidates.size(); ++i) {
    const auto& c = report.candidates[i];
    if (std::abs(c.distance - report.best.distance) < 1e-6 &&
        (c.foot - report.best.foot).norm() > 1e-3) {
      report.cut_suspect = true;
    }
  }
  return report;
}

void GeometricBounds::validate() const {
  if (!(K > 0.0) || !(H >= 0.0) || !(i0 > 0.0) || !(eps > 0.0))
    throw DomainError("GeometricBounds: K, i0, eps must be positive, H nonnegative");
  if (eps > 1.0) throw DomainError("GeometricBounds: eps must be <= 1 (normalized Lipschitz)");
}

InjRadBoundRecord geodesic_loop_bound(const GeometricBounds& bounds, int dimension) {
  bounds.validate();
  (void)dimension;  // the comparison surrogate below does not depend on it
  InjRadBoundRecord rec;
  rec.c_prime = bounds.K + 2.0 * bounds.H * bounds.H;
  rec.hessian_f = sqrtk_coth(bounds.K, bounds.i0 / 2.0);
  rec.loop_bound = std::min(bounds.i0 / 4.0, 1.0 / (rec.hessian_f + bounds.H));
  const double conj = rec.c_prime > 0.0
                          ? M_PI / std::sqrt(rec.c_prime)
                          : std::numeric_limits<double>::infinity();
  rec.value = std::min(conj, 0.5 * rec.loop_bound);
  rec.trace = {
      "c_prime = K + 2*H^2 (Gauss-equation contraction)",
      "F = sqrt(K)*coth(sqrt(K)*i0/2) (Hessian comparison surrogate for the cited F(n,C,i0))",
      "loop >= min{ i0/4, 1/(F+H) }",
      "injrad(L) >= min{ pi/sqrt(c_prime), loop/2 }",
  };
  return rec;
}

}  // namespace jholo
