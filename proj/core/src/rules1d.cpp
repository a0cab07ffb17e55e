#include "sgcolloc/rules1d.hpp"

#include <cmath>

#include "sgcolloc/orthopoly.hpp"

namespace sgc::rules1d {

Measure natural_measure(const nodes::NodeSequence& nodes) {
  if (nodes.tag == nodes::FamilyTag::GaussJacobi)
    return Measure::jacobi(nodes.jacobi_a);
  return Measure::gaussian();
}

std::vector<double> barycentric_weights(const nodes::NodeSequence& nodes) {
  const auto& y = nodes.points;
  const int n = int(y.size());
  std::vector<double> w(n, 1.0);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      if (j != k) w[k] /= (y[k] - y[j]);
  double wmax = 0.0;
  for (double v : w) wmax = std::max(wmax, std::abs(v));
  for (double& v : w) v /= wmax;
  return w;
}

std::vector<double> basis_all(const nodes::NodeSequence& nodes, double y) {
  if (nodes.points.size() == 1) return {1.0};
  return basis_all(nodes, barycentric_weights(nodes), y);
}

std::vector<double> basis_all(const nodes::NodeSequence& nodes,
                              const std::vector<double>& w, double y) {
  const auto& x = nodes.points;
  const int n = int(x.size());
  std::vector<double> out(n, 0.0);
  if (n == 1) {
    out[0] = 1.0;
    return out;
  }
  for (int k = 0; k < n; ++k) {
    if (y == x[k]) {
      out[k] = 1.0;
      return out;
    }
  }
  double denom = 0.0;
  for (int k = 0; k < n; ++k) {
    out[k] = w[k] / (y - x[k]);
    denom += out[k];
  }
  for (double& v : out) v /= denom;
  return out;
}

double lagrange_basis(const nodes::NodeSequence& nodes, int k, double y) {
  if (k < 0 || k >= int(nodes.points.size()))
    throw UsageError("lagrange_basis: index out of range");
  return basis_all(nodes, y)[k];
}

std::vector<double> quad_weights(const nodes::NodeSequence& nodes,
                                 const Measure& measure) {
  const int m = nodes.level;
  const int nref = (m + 2 + 1) / 2;  // ceil((m+2)/2), exact for degree m
  orthopoly::GaussRule ref =
      measure.kind == Measure::Kind::Gaussian
          ? orthopoly::gauss_hermite_rule(nref)
          : orthopoly::gauss_jacobi_rule(nref, measure.a, measure.a);
  std::vector<double> w(m + 1, 0.0);
  for (size_t i = 0; i < ref.points.size(); ++i) {
    auto basis = basis_all(nodes, ref.points[i]);
    for (int k = 0; k <= m; ++k) w[k] += ref.weights[i] * basis[k];
  }
  // symmetric node sets get bitwise-symmetric weights, so odd integrands
  // cancel exactly under paired summation
  for (int k = 0; 2 * k < m; ++k) {
    double avg = 0.5 * (w[k] + w[m - k]);
    w[k] = w[m - k] = avg;
  }
  return w;
}

std::vector<double> gauss_hermite_closed_form_weights(
    const nodes::NodeSequence& nodes) {
  if (nodes.tag != nodes::FamilyTag::GaussHermite)
    throw UsageError("closed-form weights require Gauss-Hermite nodes");
  const int m = nodes.level;
  std::vector<double> w(m + 1);
  for (int k = 0; k <= m; ++k) {
    // scaled evaluation: H_m can exceed the double range at the extreme
    // nodes of high-degree rules; the weight then underflows gracefully
    auto s = orthopoly::hermite_scaled(m, nodes.points[k]);
    w[k] = std::ldexp(1.0 / ((m + 1) * s.frac_k * s.frac_k), int(-2 * s.exp2));
  }
  return w;
}

UniRule make_rule(const nodes::NodeSequence& nodes, const Measure& measure) {
  // Gauss-Hermite nodes admit exact closed-form weights; the projection
  // integral loses relative accuracy on the tiny extreme weights
  if (nodes.tag == nodes::FamilyTag::GaussHermite &&
      measure.kind == Measure::Kind::Gaussian)
    return UniRule{nodes, gauss_hermite_closed_form_weights(nodes)};
  return UniRule{nodes, quad_weights(nodes, measure)};
}

double delta_interp(const nodes::NodeFamily& family, int m,
                    const std::function<double(double)>& v, double y) {
  if (m < 0) throw ConfigError("delta_interp: m must be >= 0");
  const auto& fine = family.sequence(m);
  std::vector<double> vals(fine.points.size());
  for (size_t k = 0; k < vals.size(); ++k) vals[k] = v(fine.points[k]);
  double im = interpolate(fine, vals, y);
  if (m == 0) return im;
  const auto& coarse = family.sequence(m - 1);
  std::vector<double> cvals(coarse.points.size());
  for (size_t k = 0; k < cvals.size(); ++k) cvals[k] = v(coarse.points[k]);
  return im - interpolate(coarse, cvals, y);
}

double delta_quad(const nodes::NodeFamily& family, int m,
                  const std::function<double(double)>& v) {
  if (m < 0) throw ConfigError("delta_quad: m must be >= 0");
  auto apply = [&](int level) {
    const auto& seq = family.sequence(level);
    auto w = make_rule(seq, natural_measure(seq)).weights;
    double acc = 0.0;
    for (size_t k = 0; k < w.size(); ++k) acc += w[k] * v(seq.points[k]);
    return acc;
  };
  double q = apply(m);
  if (m == 0) return q;
  return q - apply(m - 1);
}

}  // namespace sgc::rules1d
