// Copyright the jholo authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#include "jholo/tensor.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

namespace jholo {

MultiArray::MultiArray(std::vector<int> dims) : dims_(std::move(dims)) {
  std::size_t n = 1;
  strides_.resize(dims_.size());
  for (int i = static_cast<int>(dims_.size()) - 1; i >= 0; --i) {
    strides_[i] = n;
    n *= static_cast<std::size_t>(dims_[i]);
  }
  data_.assign(n, 0.0);
}

std::size_t MultiArray::offset(const std::vector<int>& idx) const {
  std::size_t o = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) o += strides_[i] * static_cast<std::size_t>(idx[i]);
  return o;
}

double& MultiArray::at(const std::vector<int>& idx) { return data_[offset(idx)]; }
double MultiArray::at(const std::vector<int>& idx) const { return data_[offset(idx)]; }

MultiArray& MultiArray::operator+=(const MultiArray& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}
MultiArray& MultiArray::operator-=(const MultiArray& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}
MultiArray& MultiArray::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

void MultiArray::for_each_index(const std::function<void(const std::vector<int>&)>& f) const {
  std::vector<int> idx(dims_.size(), 0);
  if (dims_.empty()) {
    f(idx);
    return;
  }
  while (true) {
    f(idx);
    int k = static_cast<int>(dims_.size()) - 1;
    while (k >= 0 && ++idx[k] == dims_[k]) idx[k--] = 0;
    if (k < 0) break;
  }
}

TensorField TensorField::endomorphism(int dim, const std::function<Mat(const Vec&)>& fn) {
  TensorField t;
  t.slots = {Slot::Contravariant, Slot::Covariant};
  t.component_fn = [dim, fn](const Vec& p) {
    MultiArray a({dim, dim});
    const Mat A = fn(p);
    for (int k = 0; k < dim; ++k)
      for (int j = 0; j < dim; ++j) a.at({k, j}) = A(k, j);
    return a;
  };
  return t;
}

TensorField TensorField::bilinear(int dim, const std::function<Mat(const Vec&)>& fn) {
  TensorField t;
  t.slots = {Slot::Covariant, Slot::Covariant};
  t.component_fn = [dim, fn](const Vec& p) {
    MultiArray a({dim, dim});
    const Mat B = fn(p);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a.at({i, j}) = B(i, j);
    return a;
  };
  return t;
}

TensorField TensorField::scalar(const std::function<double(const Vec&)>& fn) {
  TensorField t;
  t.component_fn = [fn](const Vec& p) {
    MultiArray a{std::vector<int>{}};
    a.at({}) = fn(p);
    return a;
  };
  return t;
}

MultiArray christoffel(const ChartManifold& m, const MetricFn& g, const Vec& p, double step) {
  const int n = m.dimension;
  m.require_interior(p, 2.0 * step, "christoffel");
  const Mat ginv = g(p).inverse();

  std::vector<Mat> dg(n);
  for (int i = 0; i < n; ++i) dg[i] = fd::partial(g, p, i, step);

  MultiArray gamma({n, n, n});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma.at({k, i, j}) = 0.5 * s;
        gamma.at({k, j, i}) = 0.5 * s;
      }
  return gamma;
}

MultiArray christoffel(const ChartManifold& m, const Vec& p) {
  return christoffel(m, m.metric_fn, p, m.fd_step);
}

MultiArray riemann_curvature(const ChartManifold& m, const MetricFn& g, const Vec& p, double step) {
  const int n = m.dimension;
  m.require_interior(p, 3.0 * step, "riemann_curvature");

  const MultiArray gam = christoffel(m, g, p, step);
  std::vector<MultiArray> dgam;
  dgam.reserve(n);
  for (int i = 0; i < n; ++i) {
    Vec hi = p, lo = p;
    hi[i] += step;
    lo[i] -= step;
    MultiArray d = christoffel(m, g, hi, step);
    d -= christoffel(m, g, lo, step);
    d *= 1.0 / (2.0 * step);
    dgam.push_back(std::move(d));
  }

  MultiArray riem({n, n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = dgam[i].at({l, j, k}) - dgam[j].at({l, i, k});
          for (int mm = 0; mm < n; ++mm)
            s += gam.at({l, i, mm}) * gam.at({mm, j, k}) -
                 gam.at({l, j, mm}) * gam.at({mm, i, k});
          riem.at({i, j, k, l}) = s;
        }
  return riem;
}

MultiArray riemann_curvature(const ChartManifold& m, const Vec& p) {
  return riemann_curvature(m, m.metric_fn, p, m.fd_step);
}

Vec curvature_apply(const MultiArray& riem, const Vec& v, const Vec& w, const Vec& z) {
  const int n = static_cast<int>(v.size());
  Vec out = Vec::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double c = v[i] * w[j] * z[k];
        if (c == 0.0) continue;
        for (int l = 0; l < n; ++l) out[l] += c * riem.at({i, j, k, l});
      }
  return out;
}

double sectional_curvature(const ChartManifold& m, const Vec& p, const Vec& v, const Vec& w) {
  const Mat g = m.metric(p);
  const MultiArray riem = riemann_curvature(m, p);
  const Vec rvww = curvature_apply(riem, v, w, w);
  const double num = rvww.dot(g * v);
  const double den = v.dot(g * v) * w.dot(g * w) - std::pow(v.dot(g * w), 2);
  if (std::abs(den) < 1e-14) throw NumericError("sectional_curvature: degenerate plane");
  return num / den;
}

TensorField covariant_derivative(const ChartManifold& m, const MetricFn& g,
                                 const TensorField& t, double step) {
  const int n = m.dimension;
  TensorField out;
  out.slots.reserve(t.slots.size() + 1);
  out.slots.push_back(Slot::Covariant);
  for (Slot s : t.slots) out.slots.push_back(s);

  const auto slots = t.slots;
  const auto comp = t.component_fn;
  const ChartManifold chart = m;
  out.component_fn = [n, step, slots, comp, chart, g](const Vec& p) {
    const MultiArray gam = christoffel(chart, g, p, step);
    const MultiArray base = comp(p);

    std::vector<int> dims(slots.size() + 1, n);
    MultiArray res(dims);

    for (int a = 0; a < n; ++a) {
      Vec hi = p, lo = p;
      hi[a] += step;
      lo[a] -= step;
      MultiArray da = comp(hi);
      da -= comp(lo);
      da *= 1.0 / (2.0 * step);

      da.for_each_index([&](const std::vector<int>& idx) {
        double val = da.at(idx);
        // connection corrections slot by slot
        for (std::size_t s = 0; s < slots.size(); ++s) {
          std::vector<int> jdx = idx;
          const int own = idx[s];
          for (int mm = 0; mm < n; ++mm) {
            jdx[s] = mm;
            const double b = base.at(jdx);
            if (slots[s] == Slot::Contravariant)
              val += gam.at({own, a, mm}) * b;
            else
              val -= gam.at({mm, a, own}) * b;
          }
        }
        std::vector<int> full;
        full.reserve(idx.size() + 1);
        full.push_back(a);
        full.insert(full.end(), idx.begin(), idx.end());
        res.at(full) = val;
      });
    }
    return res;
  };
  return out;
}

TensorField covariant_derivative(const ChartManifold& m, const TensorField& t, double step) {
  if (step <= 0.0) step = m.fd_step;
  return covariant_derivative(m, m.metric_fn, t, step);
}

double pointwise_norm(const Mat& g, const TensorField& t, const Vec& p) {
  const int n = static_cast<int>(g.rows());
  MultiArray comps = t.components(p);
  if (t.slots.empty()) return std::abs(comps.at({}));

  const Eigen::LLT<Mat> llt(g);
  const Mat L = llt.matrixL();
  const Mat cov_tf = L.inverse();      // pairs components with frame vectors
  const Mat contra_tf = L.transpose(); // expresses components in the frame

  // transform one slot at a time into the orthonormal frame
  for (std::size_t s = 0; s < t.slots.size(); ++s) {
    const Mat& tf = (t.slots[s] == Slot::Covariant) ? cov_tf : contra_tf;
    MultiArray next(comps.dims());
    next.for_each_index([&](const std::vector<int>& idx) {
      double acc = 0.0;
      std::vector<int> jdx = idx;
      for (int mm = 0; mm < n; ++mm) {
        jdx[s] = mm;
        acc += tf(idx[s], mm) * comps.at(jdx);
      }
      next.at(idx) = acc;
    });
    comps = std::move(next);
  }

  double sq = 0.0;
  for (std::size_t i = 0; i < comps.size(); ++i) sq += comps.data()[i] * comps.data()[i];
  return std::sqrt(sq);
}

double pointwise_norm(const ChartManifold& m, const TensorField& t, const Vec& p) {
  return pointwise_norm(m.metric(p), t, p);
}

double tensor_norm(const ChartManifold& m, const TensorField& t, const Vec& p,
                   int order, double step) {
  if (order < 0 || order > 2)
    throw DomainError("tensor_norm: only orders 0..2 supported");
  if (step <= 0.0) step = m.fd_step;

  double total = pointwise_norm(m, t, p);
  if (order >= 1) {
    TensorField d1 = covariant_derivative(m, t, step);
    total += pointwise_norm(m, d1, p);
    if (order >= 2) {
      TensorField d2 = covariant_derivative(m, d1, step);
      total += pointwise_norm(m, d2, p);
    }
  }
  return total;
}

SampledSup sampled_sup(const std::vector<AxisInterval>& window, int samples,
                       const std::function<double(const Vec&)>& f) {
  const int dim = static_cast<int>(window.size());
  HaltonSweep sweep(dim);
  SampledSup out;
  out.samples = samples;
  for (int i = 0; i < samples; ++i) {
    const Vec u = sweep.next();
    Vec p(dim);
    for (int d = 0; d < dim; ++d) p[d] = window[d].lo + u[d] * window[d].width();
    const double v = f(p);
    if (i == 0 || v > out.value) {
      out.value = v;
      out.argmax = p;
    }
  }
  return out;
}

SampledSup tensor_norm_sup(const ChartManifold& m, const TensorField& t,
                           const std::vector<AxisInterval>& window, int samples,
                           int order, double step) {
  return sampled_sup(window, samples,
                     [&](const Vec& p) { return tensor_norm(m, t, p, order, step); });
}

MetricPair MetricPair::make(const ChartManifold& g_chart, const MetricFn& h_fn) {
  MetricPair pair;
  pair.g_chart = g_chart;
  pair.h_fn = h_fn;
  const MetricFn gf = g_chart.metric_fn;
  pair.A_fn = [gf, h_fn](const Vec& p) { return (gf(p).inverse() * h_fn(p)).eval(); };
  return pair;
}

void MetricPair::validate_at(const Vec& p) const {
  const Mat g = g_chart.metric(p);
  const Mat h = h_fn(p);
  const Mat A = A_fn(p);
  if ((g * A - h).cwiseAbs().maxCoeff() > 1e-10)
    throw DomainError("MetricPair: g(A.,.) does not reproduce h");
  if ((g * A - A.transpose() * g).cwiseAbs().maxCoeff() > 1e-10)
    throw DomainError("MetricPair: A not self-adjoint w.r.t. g");
  Eigen::JacobiSVD<Mat> svd(A);
  const double cond = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
  if (!(cond < 1e8)) throw DomainError("MetricPair: A ill-conditioned");
}

namespace {

// W[j][k][i] = g((nabla_{e_j} A) e_k, e_i) at p, with nabla^g at the chart step.
MultiArray nabla_A_weights(const MetricPair& pair, const Vec& p) {
  const ChartManifold& m = pair.g_chart;
  const int n = m.dimension;
  const Mat g = m.metric(p);
  TensorField A = TensorField::endomorphism(n, pair.A_fn);
  TensorField dA = covariant_derivative(m, A, m.fd_step);
  const MultiArray comps = dA.components(p);  // [j][upper m][k]

  MultiArray w({n, n, n});
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int mm = 0; mm < n; ++mm) s += comps.at({j, mm, k}) * g(mm, i);
        w.at({j, k, i}) = s;
      }
  return w;
}

}  // namespace

MultiArray connection_difference_tensor(const MetricPair& pair, const Vec& p) {
  const int n = pair.g_chart.dimension;
  const MultiArray w = nabla_A_weights(pair, p);
  const Mat h = pair.h_fn(p);
  const Mat hinv = h.inverse();

  Eigen::JacobiSVD<Mat> svd(pair.A_fn(p));
  const double cond = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
  if (!(cond < 1e8)) throw DomainError("connection_difference: A ill-conditioned at point");

  MultiArray H({n, n, n});  // [upper l][i][j]
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec rhs(n);
      for (int k = 0; k < n; ++k)
        rhs[k] = -0.5 * (w.at({j, k, i}) + w.at({i, k, j}) - w.at({k, i, j}));
      const Vec Hij = hinv * rhs;
      for (int l = 0; l < n; ++l) H.at({l, i, j}) = Hij[l];
    }
  return H;
}

Vec connection_difference(const MetricPair& pair, const Vec& p, const Vec& v, const Vec& w) {
  const int n = pair.g_chart.dimension;
  const MultiArray H = connection_difference_tensor(pair, p);
  Vec out = Vec::Zero(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[l] += H.at({l, i, j}) * v[i] * w[j];
  return out;
}

Vec connection_difference_oracle(const MetricPair& pair, const Vec& p, const Vec& v, const Vec& w) {
  const ChartManifold& m = pair.g_chart;
  const int n = m.dimension;
  const MultiArray gg = christoffel(m, m.metric_fn, p, m.fd_step);
  const MultiArray gh = christoffel(m, pair.h_fn, p, m.fd_step);
  Vec out = Vec::Zero(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out[l] += (gg.at({l, i, j}) - gh.at({l, i, j})) * v[i] * w[j];
  return out;
}

Vec curvature_difference(const MetricPair& pair, const Vec& p,
                         const Vec& v, const Vec& w, const Vec& z) {
  const ChartManifold& m = pair.g_chart;
  const int n = m.dimension;

  TensorField Ht;
  Ht.slots = {Slot::Contravariant, Slot::Covariant, Slot::Covariant};
  Ht.component_fn = [pair](const Vec& q) { return connection_difference_tensor(pair, q); };

  ChartManifold h_chart = m;
  h_chart.metric_fn = pair.h_fn;
  TensorField dH = covariant_derivative(h_chart, Ht, m.fd_step);
  const MultiArray dHc = dH.components(p);  // [a][upper l][i][j]
  const MultiArray Hc = Ht.components(p);

  auto H_apply = [&](const Vec& x, const Vec& y) {
    Vec r = Vec::Zero(n);
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[l] += Hc.at({l, i, j}) * x[i] * y[j];
    return r;
  };
  auto dH_apply = [&](const Vec& dir, const Vec& x, const Vec& y) {
    Vec r = Vec::Zero(n);
    for (int a = 0; a < n; ++a)
      for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            r[l] += dHc.at({a, l, i, j}) * dir[a] * x[i] * y[j];
    return r;
  };

  return dH_apply(v, w, z) - dH_apply(w, v, z) + H_apply(v, H_apply(w, z)) - H_apply(w, H_apply(v, z));
}

Vec curvature_difference_oracle(const MetricPair& pair, const Vec& p,
                                const Vec& v, const Vec& w, const Vec& z) {
  const ChartManifold& m = pair.g_chart;
  const MultiArray rg = riemann_curvature(m, m.metric_fn, p, m.fd_step);
  const MultiArray rh = riemann_curvature(m, pair.h_fn, p, m.fd_step);
  return curvature_apply(rg, v, w, z) - curvature_apply(rh, v, w, z);
}

}  // namespace jholo
