// Copyright the jholo authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#ifndef JHOLO_CONSTANTS_HPP
#define JHOLO_CONSTANTS_HPP

#include <string>
#include <vector>

#include "jholo/lagrangian.hpp"

namespace jholo {

/// One provenance step: op applied to named prior steps or "#literal" args.
struct TraceStep {
  std::string name;
  std::string op;
  std::vector<std::string> args;
  double result = 0.0;
};

struct Provenance {
  std::vector<TraceStep> steps;
  double output() const { return steps.empty() ? 0.0 : steps.back().result; }
};

/// Re-runs every step of a trace; ops are deterministic so the result is
/// reproduced bit-exactly. Throws on unknown ops or malformed traces.
double replay(const Provenance& trace);

struct ConstantRecord {
  double value = 0.0;
  Provenance trace;
  std::vector<std::string> notes;
};

struct IsoperimetricData {
  double c = 0.0;      // |a(gamma)| <= c l(gamma)^2
  double delta = 0.0;  // loop-length threshold
  void validate() const;
};

/// delta = eps * min{1, InjRad(M)/2, InjRad(L)/2}.
ConstantRecord delta_threshold(const GeometricBounds& bounds, double injrad_L);

struct CylinderConstants {
  ConstantRecord c3;      // 1/(4 pi c), clamped to <= 1 with a note
  ConstantRecord delta2;  // min{delta1, delta^2 / (16 c1)}
};

CylinderConstants cylinder_constants(const IsoperimetricData& iso, double c1, double delta1);

/// 2*pi for bounded-setting cases 1..3; max{1/(8 eps), pi/(4 eps^2), 2 pi}
/// for case 4.
ConstantRecord c2_for_setting(double eps, int setting_case);

struct AngleBoundRecord {
  double r = 0.0;        // min{ i0/3, pi/(6 sqrt(K)) }
  double f_value = 0.0;  // H + sqrt(K) coth(sqrt(K) r)
  double c = 0.0;        // 2 pi f: theta <= c * length
  Provenance trace;
};

AngleBoundRecord angle_bound(const GeometricBounds& bounds);

struct TubeWidthRecord {
  double ell_star = 0.0;     // root of sqrt(K)(1 - lK)/(2 sinh(sqrt(K) l)) = c/eps
  double delta_prime = 0.0;  // focal bound (1/sqrt(K)) arccot(H/sqrt(K))
  double value = 0.0;        // min{ ell_star, i0/2, eps/2, delta_prime }
  bool zero_width = false;
  AngleBoundRecord angle;
  Provenance trace;
};

/// Lower bound for the distance to the cut locus of the submanifold.
TubeWidthRecord tube_width_bound(const GeometricBounds& bounds);

/// Deterministic bisection used by tube_width_bound; exposed for replay.
double tube_width_bisect(double K, double eps, double c);

struct SettingQuery {
  bool compact = false;
  bool lagrangian_present = false;
  bool lagrangian_lipschitz = false;
  bool components_lipschitz = false;
  bool domains_admit_geodesic_boundary_metric = false;
};

struct SettingReport {
  int case_index = 0;  // 1..4, or 0 when unclassifiable
  std::vector<std::string> failures;
};

/// Lowest-numbered bounded-setting case satisfied by the supplied bounds.
SettingReport classify_setting(const GeometricBounds& bounds, const SettingQuery& query);

/// The fixed constant package used by the thick-thin checkers. Construction
/// enforces c3 <= 1 and delta2 < delta1/2, clamping with notes when the raw
/// formula values land outside the convention.
struct ThickThinConstants {
  double c1 = 2.0 / M_PI;
  double c2 = 2.0 * M_PI;
  double c3 = 1.0;
  double delta1 = 0.1;
  double delta2 = 0.05;
  std::vector<std::string> notes;

  static ThickThinConstants make(double c1, double c2, double c3,
                                 double delta1, double delta2);
};

}  // namespace jholo

#endif  // JHOLO_CONSTANTS_HPP
