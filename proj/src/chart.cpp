// Copyright the jholo authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#include "jholo/chart.hpp"

#include <sstream>

#include <Eigen/Eigenvalues>

namespace jholo {

namespace {
std::string point_str(const Vec& p) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ")";
  return os.str();
}
}  // namespace

Mat ChartManifold::metric_inverse(const Vec& p) const {
  return metric_fn(p).inverse();
}

Vec ChartManifold::wrap(const Vec& p) const {
  Vec q = p;
  for (int i = 0; i < dimension; ++i) {
    if (!box[i].periodic) continue;
    const double w = box[i].width();
    q[i] = box[i].lo + std::fmod(std::fmod(q[i] - box[i].lo, w) + w, w);
  }
  return q;
}

Vec ChartManifold::coord_delta(const Vec& a, const Vec& b) const {
  Vec d = a - b;
  for (int i = 0; i < dimension; ++i) {
    if (!box[i].periodic) continue;
    const double w = box[i].width();
    d[i] = std::remainder(d[i], w);
  }
  return d;
}

bool ChartManifold::interior(const Vec& p, double margin) const {
  for (int i = 0; i < dimension; ++i) {
    if (box[i].periodic) continue;
    if (p[i] < box[i].lo + margin || p[i] > box[i].hi - margin) return false;
  }
  return true;
}

void ChartManifold::require_interior(const Vec& p, double margin, const char* who) const {
  if (!interior(p, margin)) {
    throw DomainError(std::string(who) + ": point " + point_str(p) +
                      " within " + std::to_string(margin) + " of chart boundary on " + name);
  }
}

void ChartManifold::validate_at(const Vec& p) const {
  const Mat g = metric_fn(p);
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("metric not symmetric at " + point_str(p) + " on " + name);
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  if (es.eigenvalues().minCoeff() <= 1e-10) {
    throw DomainError("metric not positive definite at " + point_str(p) + " on " + name);
  }
  if (J_fn) {
    const Mat J = (*J_fn)(p);
    const Mat defect = J * J + Mat::Identity(dimension, dimension);
    if (defect.cwiseAbs().maxCoeff() > 1e-10) {
      throw DomainError("J*J != -Id at " + point_str(p) + " on " + name);
    }
  }
  if (omega_fn) {
    const Mat om = (*omega_fn)(p);
    if ((om + om.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      throw DomainError("omega not antisymmetric at " + point_str(p) + " on " + name);
    }
  }
}

Mat metric_from_omega_J_at(const Mat& omega, const Mat& J, const Vec& p) {
  const Mat oj = omega * J;
  const Mat g = 0.5 * (oj + oj.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  if (es.eigenvalues().minCoeff() <= 1e-10) {
    throw DomainError("J does not tame omega at " + point_str(p));
  }
  return g;
}

MetricFn metric_from_omega_J(const MetricFn& omega_fn, const MetricFn& J_fn) {
  return [omega_fn, J_fn](const Vec& p) {
    return metric_from_omega_J_at(omega_fn(p), J_fn(p), p);
  };
}

}  // namespace jholo
