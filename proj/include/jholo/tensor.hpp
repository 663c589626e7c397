// Copyright the jholo authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#ifndef JHOLO_TENSOR_HPP
#define JHOLO_TENSOR_HPP

#include <functional>
#include <vector>

#include "jholo/chart.hpp"

namespace jholo {

/// Dense multi-index array with one extent per slot.
class MultiArray {
 public:
  MultiArray() = default;
  MultiArray(std::vector<int> dims);

  double& at(const std::vector<int>& idx);
  double at(const std::vector<int>& idx) const;
  const std::vector<int>& dims() const { return dims_; }
  int rank() const { return static_cast<int>(dims_.size()); }
  std::size_t size() const { return data_.size(); }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  MultiArray& operator+=(const MultiArray& o);
  MultiArray& operator-=(const MultiArray& o);
  MultiArray& operator*=(double s);

  /// Visits every multi-index in row-major order.
  void for_each_index(const std::function<void(const std::vector<int>&)>& f) const;

 private:
  std::size_t offset(const std::vector<int>& idx) const;
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  std::vector<double> data_;
};

enum class Slot { Covariant, Contravariant };

/// A tensor field on a chart: slot kinds plus a pointwise component function.
struct TensorField {
  std::vector<Slot> slots;
  std::function<MultiArray(const Vec&)> component_fn;

  MultiArray components(const Vec& p) const { return component_fn(p); }

  static TensorField endomorphism(int dim, const std::function<Mat(const Vec&)>& fn);
  static TensorField bilinear(int dim, const std::function<Mat(const Vec&)>& fn);
  static TensorField scalar(const std::function<double(const Vec&)>& fn);
};

/// Christoffel symbols Gamma[k][i][j] (k upper) from central finite
/// differences of the metric. Requires p interior by 2*step.
MultiArray christoffel(const ChartManifold& m, const Vec& p);
MultiArray christoffel(const ChartManifold& m, const MetricFn& g, const Vec& p, double step);

/// Curvature components Riem[i][j][k][l]: the l-th component of
/// R(e_i,e_j)e_k with R(V,W)Z = [nabla_V,nabla_W]Z - nabla_[V,W]Z.
/// Slots (cov,cov,cov,contra). Requires p interior by 3*step.
MultiArray riemann_curvature(const ChartManifold& m, const Vec& p);
MultiArray riemann_curvature(const ChartManifold& m, const MetricFn& g, const Vec& p, double step);

/// R(v,w)z as a vector from precomputed curvature components.
Vec curvature_apply(const MultiArray& riem, const Vec& v, const Vec& w, const Vec& z);

/// Sectional curvature of the plane spanned by v,w.
double sectional_curvature(const ChartManifold& m, const Vec& p, const Vec& v, const Vec& w);

/// Covariant derivative: prepends one covariant slot. The returned field
/// differentiates with the given step (defaults to the chart's fd_step).
TensorField covariant_derivative(const ChartManifold& m, const TensorField& t, double step = 0.0);
TensorField covariant_derivative(const ChartManifold& m, const MetricFn& g,
                                 const TensorField& t, double step);

/// Pointwise g-norm of a tensor (orthonormal-frame Frobenius norm).
double pointwise_norm(const ChartManifold& m, const TensorField& t, const Vec& p);
double pointwise_norm(const Mat& g, const TensorField& t, const Vec& p);

/// C^m norm at a point: sum over i<=m of |nabla^(i) T|_g. Orders above 2
/// are rejected (finite-difference noise dominates). Derivative stencils
/// widen geometrically with the order; `step` 0 means the chart default.
double tensor_norm(const ChartManifold& m, const TensorField& t, const Vec& p,
                   int order, double step = 0.0);

struct SampledSup {
  double value = 0.0;
  int samples = 0;
  Vec argmax;
};

/// Deterministic low-discrepancy sweep of a pointwise functional over a
/// window box. Reports the sample count; this is a sampled sup, not a sup.
SampledSup sampled_sup(const std::vector<AxisInterval>& window, int samples,
                       const std::function<double(const Vec&)>& f);

/// Sampled C^m norm of a tensor field over a window.
SampledSup tensor_norm_sup(const ChartManifold& m, const TensorField& t,
                           const std::vector<AxisInterval>& window, int samples,
                           int order, double step = 0.0);

/// Two metrics on one chart together with the comparison endomorphism A,
/// h(v,w) = g(Av,w). A defaults to G^{-1} H computed pointwise.
struct MetricPair {
  ChartManifold g_chart;
  MetricFn h_fn;
  std::function<Mat(const Vec&)> A_fn;

  static MetricPair make(const ChartManifold& g_chart, const MetricFn& h_fn);
  void validate_at(const Vec& p) const;
};

/// Connection difference H^{g,h}(V,W) = nabla^g_V W - nabla^h_V W evaluated
/// through the A-tensor formula
///   h(H(V_i,V_j),V_k) = -1/2 { g((nabla^g_{V_j}A)V_k, V_i)
///                            + g((nabla^g_{V_i}A)V_k, V_j)
///                            - g((nabla^g_{V_k}A)V_i, V_j) }.
Vec connection_difference(const MetricPair& pair, const Vec& p, const Vec& v, const Vec& w);

/// Same quantity from the Christoffel-symbol difference; the oracle route.
Vec connection_difference_oracle(const MetricPair& pair, const Vec& p, const Vec& v, const Vec& w);

/// All components H[k][i][j] via the A-tensor formula.
MultiArray connection_difference_tensor(const MetricPair& pair, const Vec& p);

/// Curvature difference S^{g,h}(V,W)Z = R^g(V,W)Z - R^h(V,W)Z evaluated as
///   (nabla^h_V H)(W,Z) - (nabla^h_W H)(V,Z) + H(V,H(W,Z)) - H(W,H(V,Z)).
Vec curvature_difference(const MetricPair& pair, const Vec& p,
                         const Vec& v, const Vec& w, const Vec& z);

/// Direct difference of the two curvature tensors; the oracle route.
Vec curvature_difference_oracle(const MetricPair& pair, const Vec& p,
                                const Vec& v, const Vec& w, const Vec& z);

}  // namespace jholo

#endif  // JHOLO_TENSOR_HPP
