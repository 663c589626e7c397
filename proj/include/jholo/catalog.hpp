// Copyright the jholo authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#ifndef JHOLO_CATALOG_HPP
#define JHOLO_CATALOG_HPP

#include <complex>
#include <map>

#include "jholo/lagrangian.hpp"

namespace jholo::catalog {

using Params = std::map<std::string, double>;

// -- manifolds ---------------------------------------------------------

/// R^n with the flat metric; for even n also the standard omega and J.
ChartManifold euclidean(int n);

/// Round sphere of radius r in spherical coordinates (theta, phi), with the
/// area form as omega and the 90-degree rotation as J (so g_J is round).
ChartManifold round_sphere(double r);

/// Upper half-plane metric (dx^2 + dy^2)/y^2.
ChartManifold hyperbolic_plane();

/// Flat torus with the given periods, standard omega and J.
ChartManifold flat_torus(double period_x, double period_y);

/// Flat plane in polar coordinates dr^2 + r^2 dtheta^2.
ChartManifold polar_flat();

// -- Lagrangians -------------------------------------------------------

/// R^n = {y = 0} inside C^n (coordinates x1,y1,...,xn,yn).
LagrangianEmbedding linear_subspace(int n);

/// Circle of radius r in C.
LagrangianEmbedding circle_in_c(double r);

/// S^1 x R inside C x C.
LagrangianEmbedding product_circle_line(double r);

/// S^1 x S^1 (product of circles) inside C x C.
LagrangianEmbedding product_circle_circle(double r1, double r2);

/// Equator of the round sphere.
LagrangianEmbedding sphere_equator(double r);

// -- holomorphic curve families (flat C^n targets) ----------------------

/// A curve given by complex-analytic component functions with analytic
/// derivative; plane coordinate z = x + iy (or rho + i*theta on cylinders).
struct AnalyticCurve {
  int factors = 1;  // target C^factors
  std::function<std::vector<std::complex<double>>(std::complex<double>)> f;
  std::function<std::vector<std::complex<double>>(std::complex<double>)> df;

  Vec map(std::complex<double> z) const;
  /// Columns: d/dx u, d/dy u as real target vectors.
  Mat differential(std::complex<double> z) const;
};

AnalyticCurve curve_identity();                    // z
AnalyticCurve curve_power(int k);                  // z^k
AnalyticCurve curve_affine(std::complex<double> a, std::complex<double> b);  // a + b z
AnalyticCurve curve_exp_decay(double epsilon);     // epsilon * e^{-z}
AnalyticCurve curve_exp();                         // e^z
AnalyticCurve curve_sin();                         // sin z
AnalyticCurve curve_pair(const AnalyticCurve& u1, const AnalyticCurve& u2);  // into C^2

// -- named access for scenario files ------------------------------------

struct CatalogEntry {
  std::string name;
  std::string kind;  // "manifold" | "lagrangian" | "curve"
  std::vector<std::string> params;
};

std::vector<CatalogEntry> listing(const std::string& filter = "");

ChartManifold manifold_by_name(const std::string& name, const Params& params);
LagrangianEmbedding lagrangian_by_name(const std::string& name, const Params& params);
AnalyticCurve curve_by_name(const std::string& name, const Params& params);

}  // namespace jholo::catalog

#endif  // JHOLO_CATALOG_HPP
