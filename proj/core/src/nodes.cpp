#include "sgcolloc/nodes.hpp"

#include <algorithm>
#include <cmath>

#include "sgcolloc/orthopoly.hpp"
#include "sgcolloc/rules1d.hpp"

namespace sgc::nodes {

NodeSequence gauss_hermite_nodes(int m) {
  NodeSequence seq;
  seq.tag = FamilyTag::GaussHermite;
  seq.level = m;
  seq.points = orthopoly::hermite_roots(m);
  return seq;
}

namespace {

double weighted_hermite_abs(int k, double y) {
  return std::abs(orthopoly::hermite_value(k, y)) * std::exp(-0.25 * y * y);
}

}  // namespace

double szabados_zeta(int m) {
  if (m < 3) throw ConfigError("szabados_zeta: needs m > 2");
  const int k = m - 1;  // maximize |H_{m-1} sqrt(g)|
  auto roots = orthopoly::hermite_roots(k - 1);  // roots of H_k
  const double lo = roots.back();
  // the last local max of the weighted polynomial sits within O(1) beyond
  // the largest root (bump width ~ k^{-1/6})
  const double hi = lo + 4.0;
  const int nscan = 4000;
  double best = lo, bestval = -1.0;
  for (int i = 0; i <= nscan; ++i) {
    double y = lo + (hi - lo) * i / nscan;
    double v = weighted_hermite_abs(k, y);
    if (v > bestval) {
      bestval = v;
      best = y;
    }
  }
  // golden-section refinement around the scan winner
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = std::max(lo, best - (hi - lo) / nscan);
  double b = std::min(hi, best + (hi - lo) / nscan);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  while (b - a > 1e-10) {
    if (weighted_hermite_abs(k, c) > weighted_hermite_abs(k, d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - gr * (b - a);
    d = a + gr * (b - a);
  }
  return 0.5 * (a + b);
}

NodeSequence szabados_nodes(int m) {
  if (m <= 2) {
    NodeSequence seq = gauss_hermite_nodes(m);
    seq.tag = FamilyTag::Szabados;
    return seq;
  }
  auto inner = orthopoly::hermite_roots(m - 2);
  double zeta = szabados_zeta(m);
  if (!(zeta > inner.back()))
    throw NumericError("szabados_nodes: maximizer does not extend the inner grid");
  NodeSequence seq;
  seq.tag = FamilyTag::Szabados;
  seq.level = m;
  seq.points.reserve(m + 1);
  seq.points.push_back(-zeta);
  seq.points.insert(seq.points.end(), inner.begin(), inner.end());
  seq.points.push_back(zeta);
  return seq;
}

NodeSequence gauss_jacobi_nodes(int m, double a) {
  if (a <= -1.0) throw ConfigError("gauss_jacobi_nodes: a must be > -1");
  NodeSequence seq;
  seq.tag = FamilyTag::GaussJacobi;
  seq.level = m;
  seq.jacobi_a = a;
  seq.points = orthopoly::jacobi_roots(m, a, a);
  return seq;
}

double lebesgue_constant(const NodeSequence& nodes) {
  const int m = nodes.level;
  const bool gaussian = nodes.tag != FamilyTag::GaussJacobi;
  double lo, hi;
  if (gaussian) {
    // cover the whole node span: the weighted Lebesgue function of plain
    // Gauss nodes peaks near the extreme nodes, far beyond sqrt(m)
    double am2 = std::sqrt(double(m + 2));
    hi = std::max(am2, nodes.points.back()) + 2.0;
    lo = -hi;
  } else {
    lo = -1.0;
    hi = 1.0;
  }
  // log-space first barycentric form: the second form's denominator has
  // alternating signs and cancels catastrophically far outside the nodes,
  // and that error gets amplified by the exp(y_k^2/4) weight ratio
  std::vector<double> lden(m + 1, 0.0);
  for (int k = 0; k <= m; ++k)
    for (int j = 0; j <= m; ++j)
      if (j != k) lden[k] += std::log(std::abs(nodes.points[k] - nodes.points[j]));
  const int ngrid = 20000;  // 20001 samples, so y = 0 is on the grid
  double lam = 0.0;
  for (int i = 0; i <= ngrid; ++i) {
    double y = lo + (hi - lo) * i / ngrid;
    double lnum = 0.0;
    bool on_node = false;
    for (int k = 0; k <= m; ++k) {
      if (y == nodes.points[k]) {
        on_node = true;
        break;
      }
      lnum += std::log(std::abs(y - nodes.points[k]));
    }
    double s = 0.0;
    if (on_node) {
      s = 1.0;  // sum of |l_k| with the weight ratio collapses to 1
    } else {
      for (int k = 0; k <= m; ++k) {
        double le = lnum - std::log(std::abs(y - nodes.points[k])) - lden[k];
        if (gaussian)
          le += 0.25 * (nodes.points[k] * nodes.points[k] - y * y);
        s += std::exp(le);
      }
    }
    lam = std::max(lam, s);
  }
  return lam;
}

NodeFamily::NodeFamily(FamilyTag tag, double jacobi_a)
    : tag_(tag), jacobi_a_(jacobi_a) {
  if (tag == FamilyTag::GaussJacobi && jacobi_a <= -1.0)
    throw ConfigError("NodeFamily: jacobi parameter must be > -1");
}

double NodeFamily::tau() const {
  // nominal exponents; epsilon fixed to 0.05 for diagnostics
  constexpr double eps = 0.05;
  switch (tag_) {
    case FamilyTag::GaussHermite:
      return 1.0 / 6.0 + eps;
    case FamilyTag::Szabados:
      return eps;
    case FamilyTag::GaussJacobi:
      return 0.5 + eps;  // Gauss nodes on [-1,1]
  }
  return eps;
}

const NodeSequence& NodeFamily::sequence(int m) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(m);
  if (it != cache_.end()) return *it->second;
  NodeSequence seq;
  switch (tag_) {
    case FamilyTag::GaussHermite:
      seq = gauss_hermite_nodes(m);
      break;
    case FamilyTag::Szabados:
      seq = szabados_nodes(m);
      break;
    case FamilyTag::GaussJacobi:
      seq = gauss_jacobi_nodes(m, jacobi_a_);
      break;
  }
  auto ptr = std::make_shared<const NodeSequence>(std::move(seq));
  cache_.emplace(m, ptr);
  return *ptr;
}

}  // namespace sgc::nodes
