// Copyright the jholo authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#ifndef JHOLO_LAGRANGIAN_HPP
#define JHOLO_LAGRANGIAN_HPP

#include <map>

#include "jholo/geodesic.hpp"

namespace jholo {

/// A parametrized submanifold of a chart manifold. For Lagrangian checks the
/// ambient must carry omega and l_dimension must be half the ambient one.
struct LagrangianEmbedding {
  ChartManifold ambient;
  std::function<Vec(const Vec&)> param_fn;
  int l_dimension = 0;
  std::vector<AxisInterval> l_box;
  double fd_step = 1e-5;
  std::string name = "submanifold";

  Vec embed(const Vec& s) const { return param_fn(s); }

  /// Columns are the coordinate tangent vectors d(param)/ds_c.
  Mat differential(const Vec& s) const;

  /// g-orthonormal tangent frame (Gram-Schmidt of the differential columns).
  Mat tangent_frame(const Vec& s) const;

  /// Full-rank and, when omega is present, vanishing-pullback checks.
  void validate_at(const Vec& s) const;

  /// g-orthogonal projection of an ambient vector onto the normal space.
  Vec normal_projection(const Vec& s, const Vec& x) const;
};

/// B(v,w): normal component of nabla_v W for tangent vectors v,w at
/// param_fn(s), from second derivatives of the embedding plus ambient
/// Christoffel symbols. Symmetric in v,w.
Vec second_fundamental_form(const LagrangianEmbedding& lag, const Vec& s,
                            const Vec& v, const Vec& w);

/// S_nu(v) satisfying g(S_nu(v), w) = g(B(v,w), nu) for tangent w.
Vec shape_operator(const LagrangianEmbedding& lag, const Vec& s,
                   const Vec& nu, const Vec& v);

/// Geodesic from param_fn(s) with initial velocity `normal` evaluated at t.
Vec normal_exponential(const LagrangianEmbedding& lag, const Vec& s,
                       const Vec& normal, double t, int steps = 256);

struct NearestPoint {
  bool converged = false;
  double distance = 0.0;
  Vec l_point;           // parameter of the foot
  Vec foot;              // ambient coordinates of the foot
  Vec initial_velocity;  // unit-speed times distance: exp reaches the query
};

struct NearestPointReport {
  NearestPoint best;
  std::vector<NearestPoint> candidates;  // distinct local minimizers found
  bool cut_suspect = false;              // two feet realize the same distance
};

/// Coarse grid over the parameter box followed by Newton refinement of the
/// normal-shooting system. Throws DomainError when no minimum converges
/// inside the window.
NearestPointReport distance_to_submanifold(const LagrangianEmbedding& lag, const Vec& p,
                                           int grid_per_dim = 64, int newton_iters = 50);

/// Numeric bound inputs: |Sec| <= K, |B| <= H, InjRad(M) >= i0, Lipschitz
/// constant eps, plus optional higher C^k norms keyed by order.
struct GeometricBounds {
  double K = 0.0;
  double H = 0.0;
  double i0 = 0.0;
  double eps = 0.0;
  std::map<int, double> r_norms;
  std::map<int, double> j_norms;
  std::map<int, double> b_norms;

  void validate() const;
};

/// Lower bound for InjRad(L) with every intermediate recorded for audit.
struct InjRadBoundRecord {
  double c_prime = 0.0;    // sectional bound on L: K + 2 H^2
  double hessian_f = 0.0;  // sqrt(K) coth(sqrt(K) i0 / 2), comparison surrogate
  double loop_bound = 0.0; // min{ i0/4, 1/(F+H) }
  double value = 0.0;      // min{ pi/sqrt(C'), loop_bound/2 }
  std::vector<std::string> trace;
};

InjRadBoundRecord geodesic_loop_bound(const GeometricBounds& bounds, int dimension);

}  // namespace jholo

#endif  // JHOLO_LAGRANGIAN_HPP
