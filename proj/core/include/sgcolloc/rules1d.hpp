#ifndef SGCOLLOC_RULES1D_HPP
#define SGCOLLOC_RULES1D_HPP

#include <functional>
#include <vector>

#include "sgcolloc/common.hpp"
#include "sgcolloc/nodes.hpp"

// Univariate Lagrange interpolation I_m, quadrature Q_m with weights
// omega_{m;k}, and the successive differences Delta^I_m = I_m - I_{m-1},
// Delta^Q_m = Q_m - Q_{m-1} (I_{-1} = Q_{-1} = 0).

namespace sgc::rules1d {

struct Measure {
  enum class Kind { Gaussian, Jacobi };
  Kind kind = Kind::Gaussian;
  double a = 0.0;  // Jacobi parameter (a = b)

  static Measure gaussian() { return {Kind::Gaussian, 0.0}; }
  static Measure jacobi(double a) { return {Kind::Jacobi, a}; }
};

/// Measure matching the node family (Gaussian for Hermite-type nodes).
Measure natural_measure(const nodes::NodeSequence& nodes);

/// Barycentric weights w_k = 1 / prod_{j != k} (y_k - y_j), rescaled so the
/// largest magnitude is 1.
std::vector<double> barycentric_weights(const nodes::NodeSequence& nodes);

/// All cardinal values l_{m;k}(y), k = 0..m, via the second barycentric form.
std::vector<double> basis_all(const nodes::NodeSequence& nodes, double y);

/// Same, with precomputed barycentric weights (hot path).
std::vector<double> basis_all(const nodes::NodeSequence& nodes,
                              const std::vector<double>& bary, double y);

/// l_{m;k}(y).
double lagrange_basis(const nodes::NodeSequence& nodes, int k, double y);

/// I_m applied to point values: sum_k values[k] l_{m;k}(y).  H is any type
/// closed under addition and scalar multiplication.
template <class H>
H interpolate(const nodes::NodeSequence& nodes, const std::vector<H>& values,
              double y) {
  if (values.size() != nodes.points.size())
    throw UsageError("interpolate: values/nodes length mismatch");
  auto basis = basis_all(nodes, y);
  H acc = values[0] * basis[0];
  for (size_t k = 1; k < values.size(); ++k) acc += values[k] * basis[k];
  return acc;
}

/// omega_{m;k} = int l_{m;k} d(measure), computed exactly with a reference
/// Gauss rule of ceil((m+2)/2) points.
std::vector<double> quad_weights(const nodes::NodeSequence& nodes,
                                 const Measure& measure);

/// Closed form for Gauss-Hermite nodes: 1 / ((m+1) H_m(y*_{m;k})^2).
std::vector<double> gauss_hermite_closed_form_weights(
    const nodes::NodeSequence& nodes);

struct UniRule {
  nodes::NodeSequence nodes;
  std::vector<double> weights;
};

UniRule make_rule(const nodes::NodeSequence& nodes, const Measure& measure);

template <class H>
H quadrature(const UniRule& rule, const std::vector<H>& values) {
  if (values.size() != rule.weights.size())
    throw UsageError("quadrature: values/weights length mismatch");
  H acc = values[0] * rule.weights[0];
  for (size_t k = 1; k < values.size(); ++k) acc += values[k] * rule.weights[k];
  return acc;
}

/// (I_m - I_{m-1})(v)(y); for m = 0 this is v(y_{0;0}).
double delta_interp(const nodes::NodeFamily& family, int m,
                    const std::function<double(double)>& v, double y);

/// (Q_m - Q_{m-1})(v).
double delta_quad(const nodes::NodeFamily& family, int m,
                  const std::function<double(double)>& v);

}  // namespace sgc::rules1d

#endif
