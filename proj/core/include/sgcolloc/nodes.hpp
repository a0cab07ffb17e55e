#ifndef SGCOLLOC_NODES_HPP
#define SGCOLLOC_NODES_HPP

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "sgcolloc/common.hpp"

// Univariate interpolation node families Y_m and Lebesgue-constant
// estimation.  Every sequence is strictly increasing, symmetric about 0,
// has m+1 points, and starts from Y_0 = {0}.

namespace sgc::nodes {

enum class FamilyTag { GaussHermite, Szabados, GaussJacobi };

struct NodeSequence {
  FamilyTag tag = FamilyTag::GaussHermite;
  int level = 0;
  std::vector<double> points;  // strictly increasing, size level+1
  double jacobi_a = 0.0;       // only meaningful for GaussJacobi (a = b)
};

/// Y*_m: the roots of H_{m+1}.
NodeSequence gauss_hermite_nodes(int m);

/// Positive maximizer of |H_{m-1}(y) sqrt(g(y))|, located by a coarse scan
/// over the 4-unit interval beyond the largest root of H_{m-1} and
/// golden-section refinement.
double szabados_zeta(int m);

/// Szabados-modified nodes: Gauss-Hermite for m <= 2, otherwise
/// {-zeta} u Y*_{m-2} u {zeta}.  Throws NumericError if the maximizer does
/// not lie strictly beyond the largest point of Y*_{m-2}.
NodeSequence szabados_nodes(int m);

/// Roots of the degree-(m+1) Jacobi polynomial with parameters (a, a).
NodeSequence gauss_jacobi_nodes(int m, double a);

/// Numerical estimate of the weighted Lebesgue constant
///   lambda_m = sup_y sqrt(g(y)) sum_k |l_{m;k}(y)| / sqrt(g(y_{m;k}))
/// over a uniform grid on [-(a_{m+2}+2), a_{m+2}+2] (for Gaussian-weighted
/// families) or of the classical Lebesgue function on [-1,1] (Jacobi).
double lebesgue_constant(const NodeSequence& nodes);

/// Generator with a per-level cache; immutable sequences are shared.
class NodeFamily {
 public:
  explicit NodeFamily(FamilyTag tag, double jacobi_a = 0.0);

  FamilyTag tag() const { return tag_; }
  double jacobi_a() const { return jacobi_a_; }
  /// Nominal Lebesgue growth exponent tau of the family.
  double tau() const;
  bool gaussian_measure() const { return tag_ != FamilyTag::GaussJacobi; }

  const NodeSequence& sequence(int m) const;

 private:
  FamilyTag tag_;
  double jacobi_a_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::shared_ptr<const NodeSequence>> cache_;
};

}  // namespace sgc::nodes

#endif
