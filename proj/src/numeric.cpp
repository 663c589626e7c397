// Copyright the jholo authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#include "jholo/numeric.hpp"

namespace jholo {

namespace quad {

std::vector<double> cumulative(const std::function<double(double)>& fn,
                               double t_end, int n_samples) {
  if (n_samples < 2) throw NumericError("cumulative quadrature needs >= 2 samples");
  const int refine = 4;
  const int fine_n = (n_samples - 1) * refine * 2;  // even count per coarse cell
  const double h = t_end / fine_n;

  // Composite Simpson accumulated pairwise over the fine grid.
  std::vector<double> fine(fine_n + 1);
  for (int i = 0; i <= fine_n; ++i) fine[i] = fn(i * h);
  std::vector<double> cum(fine_n / 2 + 1, 0.0);
  for (int i = 0; i < fine_n / 2; ++i) {
    cum[i + 1] = cum[i] + h / 3.0 * (fine[2 * i] + 4.0 * fine[2 * i + 1] + fine[2 * i + 2]);
  }
  std::vector<double> out(n_samples);
  for (int i = 0; i < n_samples; ++i) out[i] = cum[static_cast<std::size_t>(i) * refine];
  return out;
}

}  // namespace quad

namespace {
constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, x = 0.0;
  while (i > 0) {
    x += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return x;
}
}  // namespace

HaltonSweep::HaltonSweep(int dim) {
  if (dim < 1 || dim > 8) throw NumericError("Halton sweep supports 1..8 dims");
  for (int d = 0; d < dim; ++d) bases_.push_back(kPrimes[d]);
}

Vec HaltonSweep::next() {
  Vec p(static_cast<int>(bases_.size()));
  for (int d = 0; d < p.size(); ++d) p[d] = radical_inverse(index_, bases_[d]);
  ++index_;
  return p;
}

double smoothstep(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double sqrtk_coth(double k, double x) {
  if (k < 0.0) throw NumericError("sqrtk_coth requires k >= 0");
  if (x <= 0.0) throw NumericError("sqrtk_coth requires x > 0");
  const double a = std::sqrt(k) * x;
  if (a < 1e-6) return 1.0 / x + k * x / 3.0;  // series limit
  return std::sqrt(k) / std::tanh(a);
}

double inv_sqrtk_arccot(double k, double h) {
  if (k < 0.0 || h <= 0.0) throw NumericError("inv_sqrtk_arccot requires k >= 0, h > 0");
  const double s = std::sqrt(k);
  if (s < 1e-9 * h) return 1.0 / h;  // flat focal distance
  return std::atan2(s, h) / s;       // arccot(h/s) = atan(s/h)
}

}  // namespace jholo
