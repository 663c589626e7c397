// Copyright the jholo authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#include "jholo/constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

namespace jholo {

namespace {

std::string lit(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "#%.17g", x);
  return buf;
}

}  // namespace

namespace {

class TraceBuilder {
 public:
  double add(const std::string& name, const std::string& op,
             std::vector<std::string> args, double result) {
    trace_.steps.push_back({name, op, std::move(args), result});
    values_[name] = result;
    return result;
  }
  double value(const std::string& name) const { return values_.at(name); }
  Provenance take() { return std::move(trace_); }

 private:
  Provenance trace_;
  std::map<std::string, double> values_;
};

double apply_op(const std::string& op, const std::vector<double>& a) {
  if (op == "input" || op == "const") return a.at(0);
  if (op == "min") return *std::min_element(a.begin(), a.end());
  if (op == "max") return *std::max_element(a.begin(), a.end());
  if (op == "add") return a.at(0) + a.at(1);
  if (op == "sub") return a.at(0) - a.at(1);
  if (op == "mul") return a.at(0) * a.at(1);
  if (op == "div") return a.at(0) / a.at(1);
  if (op == "recip") return 1.0 / a.at(0);
  if (op == "sqrt") return std::sqrt(a.at(0));
  if (op == "sq") return a.at(0) * a.at(0);
  if (op == "pi_over_sqrt")
    return a.at(0) > 0.0 ? M_PI / std::sqrt(a.at(0)) : std::numeric_limits<double>::infinity();
  if (op == "clamp_max") return std::min(a.at(0), a.at(1));
  if (op == "coth_scaled") return sqrtk_coth(a.at(0), a.at(1));
  if (op == "arccot_scaled") return inv_sqrtk_arccot(a.at(0), a.at(1));
  if (op == "bisect_tube_width") return tube_width_bisect(a.at(0), a.at(1), a.at(2));
  throw NumericError("replay: unknown op " + op);
}

}  // namespace

double replay(const Provenance& trace) {
  std::map<std::string, double> env;
  double last = 0.0;
  for (const auto& st : trace.steps) {
    std::vector<double> args;
    for (const auto& a : st.args) {
      if (!a.empty() && a[0] == '#')
        args.push_back(std::stod(a.substr(1)));
      else
        args.push_back(env.at(a));
    }
    last = apply_op(st.op, args);
    env[st.name] = last;
  }
  return last;
}

void IsoperimetricData::validate() const {
  if (!(c > 0.0) || !(delta > 0.0))
    throw DomainError("IsoperimetricData: c and delta must be positive");
}

ConstantRecord delta_threshold(const GeometricBounds& bounds, double injrad_L) {
  bounds.validate();
  if (!(injrad_L > 0.0)) throw DomainError("delta_threshold: injrad_L must be positive");
  TraceBuilder tb;
  tb.add("eps", "input", {lit(bounds.eps)}, bounds.eps);
  tb.add("half_i0", "mul", {"#0.5", lit(bounds.i0)}, 0.5 * bounds.i0);
  tb.add("half_iL", "mul", {"#0.5", lit(injrad_L)}, 0.5 * injrad_L);
  const double m = std::min({1.0, 0.5 * bounds.i0, 0.5 * injrad_L});
  tb.add("min_term", "min", {"#1", "half_i0", "half_iL"}, m);
  ConstantRecord rec;
  rec.value = tb.add("delta", "mul", {"eps", "min_term"}, bounds.eps * m);
  rec.trace = tb.take();
  return rec;
}

static CylinderConstants cylinderify(double c, double delta, double c1, double delta1) {
  CylinderConstants out;
  {
    TraceBuilder tb;
    const double raw = 1.0 / (4.0 * M_PI * c);
    tb.add("four_pi_c", "mul", {lit(4.0 * M_PI), lit(c)},
           4.0 * M_PI * c);
    tb.add("c3_raw", "recip", {"four_pi_c"}, raw);
    out.c3.value = tb.add("c3", "clamp_max", {"c3_raw", "#1"}, std::min(raw, 1.0));
    out.c3.trace = tb.take();
    if (raw > 1.0) out.c3.notes.push_back("c3 clamped to 1 (convention c3 <= 1); raw value " + std::to_string(raw));
  }
  {
    TraceBuilder tb;
    tb.add("delta_sq", "sq", {lit(delta)}, delta * delta);
    tb.add("sixteen_c1", "mul", {"#16", lit(c1)}, 16.0 * c1);
    const double second = delta * delta / (16.0 * c1);
    tb.add("second", "div", {"delta_sq", "sixteen_c1"}, second);
    out.delta2.value = tb.add("delta2", "min", {lit(delta1), "second"},
                              std::min(delta1, second));
    out.delta2.trace = tb.take();
  }
  return out;
}

CylinderConstants cylinder_constants(const IsoperimetricData& iso, double c1, double delta1) {
  iso.validate();
  if (!(c1 > 0.0) || !(delta1 > 0.0))
    throw DomainError("cylinder_constants: c1 and delta1 must be positive");
  return cylinderify(iso.c, iso.delta, c1, delta1);
}

ConstantRecord c2_for_setting(double eps, int setting_case) {
  if (!(eps > 0.0)) throw DomainError("c2_for_setting: eps must be positive");
  if (setting_case < 1 || setting_case > 4)
    throw DomainError("c2_for_setting: case index must be 1..4");
  ConstantRecord rec;
  TraceBuilder tb;
  if (setting_case <= 3) {
    rec.value = tb.add("c2", "const", {lit(2.0 * M_PI)}, 2.0 * M_PI);
    rec.notes.push_back("cases 1-3: c2 = 2*pi");
  } else {
    const double t1 = 1.0 / (8.0 * eps);
    const double t2 = M_PI / (4.0 * eps * eps);
    tb.add("one_over_8eps", "recip", {lit(8.0 * eps)}, t1);
    tb.add("pi_over_4eps2", "div",
           {lit(M_PI), lit(4.0 * eps * eps)}, t2);
    rec.value = tb.add("c2", "max", {"one_over_8eps", "pi_over_4eps2",
                                     lit(2.0 * M_PI)},
                       std::max({t1, t2, 2.0 * M_PI}));
  }
  rec.trace = tb.take();
  return rec;
}

AngleBoundRecord angle_bound(const GeometricBounds& bounds) {
  bounds.validate();
  AngleBoundRecord rec;
  TraceBuilder tb;
  const double r_curv = M_PI / (6.0 * std::sqrt(bounds.K));
  tb.add("r_curv", "div", {lit(M_PI),
                           lit(6.0 * std::sqrt(bounds.K))}, r_curv);
  rec.r = tb.add("r", "min", {lit(bounds.i0 / 3.0), "r_curv"},
                 std::min(bounds.i0 / 3.0, r_curv));
  const double coth_term = sqrtk_coth(bounds.K, rec.r);
  tb.add("coth_term", "coth_scaled", {lit(bounds.K), "r"}, coth_term);
  rec.f_value = tb.add("f", "add", {lit(bounds.H), "coth_term"},
                       bounds.H + coth_term);
  rec.c = tb.add("c", "mul", {lit(2.0 * M_PI), "f"},
                 2.0 * M_PI * rec.f_value);
  rec.trace = tb.take();
  return rec;
}

double tube_width_bisect(double K, double eps, double c) {
  const double target = c / eps;
  const double upper = std::min(1.0 / K, eps / 2.0);
  auto rhs = [K](double l) {
    const double sk = std::sqrt(K);
    const double denom = 2.0 * std::sinh(sk * l);
    return sk * (1.0 - l * K) / denom;
  };
  // rhs decreases from +inf; find the crossing rhs(l) = target
  if (rhs(upper) > target) return upper;  // inequality binding beyond the cap
  double lo = 0.0, hi = upper;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 0.0) break;
    if (rhs(mid) > target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-10 * upper) break;
  }
  return 0.5 * (lo + hi);
}

TubeWidthRecord tube_width_bound(const GeometricBounds& bounds) {
  bounds.validate();
  TubeWidthRecord rec;
  rec.angle = angle_bound(bounds);
  rec.delta_prime = inv_sqrtk_arccot(bounds.K, std::max(bounds.H, 1e-300));
  rec.ell_star = tube_width_bisect(bounds.K, bounds.eps, rec.angle.c);
  rec.value = std::min({rec.ell_star, bounds.i0 / 2.0, bounds.eps / 2.0, rec.delta_prime});
  rec.zero_width = !(rec.value > 1e-14);

  TraceBuilder tb;
  tb.add("c", "input", {lit(rec.angle.c)}, rec.angle.c);
  tb.add("ell_star", "bisect_tube_width",
         {lit(bounds.K), lit(bounds.eps), "c"},
         rec.ell_star);
  tb.add("delta_prime", "arccot_scaled",
         {lit(bounds.K), lit(std::max(bounds.H, 1e-300))},
         rec.delta_prime);
  tb.add("value", "min",
         {"ell_star", lit(bounds.i0 / 2.0),
          lit(bounds.eps / 2.0), "delta_prime"},
         rec.value);
  rec.trace = tb.take();
  return rec;
}

SettingReport classify_setting(const GeometricBounds& bounds, const SettingQuery& query) {
  SettingReport rep;
  auto finite = [](const std::map<int, double>& m, int order) {
    auto it = m.find(order);
    return it != m.end() && std::isfinite(it->second);
  };
  const bool inj_ok = bounds.i0 > 0.0 && std::isfinite(1.0 / bounds.i0);

  if (query.compact) {
    rep.case_index = 1;
    return rep;
  }
  if (!query.lagrangian_present) {
    if (finite(bounds.r_norms, 0) && finite(bounds.j_norms, 2) && inj_ok) {
      rep.case_index = 2;
      return rep;
    }
    if (!finite(bounds.r_norms, 0)) rep.failures.push_back("|R| not finite");
    if (!finite(bounds.j_norms, 2)) rep.failures.push_back("|J|_2 not finite");
    if (!inj_ok) rep.failures.push_back("InjRad(M) lower bound missing");
    return rep;
  }

  const bool norms3 = finite(bounds.r_norms, 2) && finite(bounds.j_norms, 3) &&
                      finite(bounds.b_norms, 2) && inj_ok;
  if (query.lagrangian_lipschitz && norms3) {
    rep.case_index = 3;
    return rep;
  }
  if (query.components_lipschitz && norms3 && query.domains_admit_geodesic_boundary_metric) {
    rep.case_index = 4;
    return rep;
  }
  if (!finite(bounds.r_norms, 2)) rep.failures.push_back("|R|_2 not finite");
  if (!finite(bounds.j_norms, 3)) rep.failures.push_back("|J|_3 not finite");
  if (!finite(bounds.b_norms, 2)) rep.failures.push_back("|B|_2 not finite");
  if (!inj_ok) rep.failures.push_back("InjRad(M) lower bound missing");
  if (!query.lagrangian_lipschitz) rep.failures.push_back("L not known Lipschitz");
  return rep;
}

ThickThinConstants ThickThinConstants::make(double c1, double c2, double c3,
                                            double delta1, double delta2) {
  if (!(c1 > 0.0 && c2 > 0.0 && c3 > 0.0 && delta1 > 0.0 && delta2 > 0.0))
    throw DomainError("ThickThinConstants: all constants must be positive");
  ThickThinConstants k;
  k.c1 = c1;
  k.c2 = c2;
  k.delta1 = delta1;
  if (c3 > 1.0) {
    k.c3 = 1.0;
    k.notes.push_back("c3 clamped to 1 (convention c3 <= 1)");
  } else {
    k.c3 = c3;
  }
  const double cap = 0.5 * delta1 * (1.0 - 1e-12);
  if (delta2 >= 0.5 * delta1) {
    k.delta2 = cap;
    k.notes.push_back("delta2 clamped below delta1/2 (convention delta2 < delta1/2)");
  } else {
    k.delta2 = delta2;
  }
  return k;
}

}  // namespace jholo
