#ifndef SGCOLLOC_FEM_HPP
#define SGCOLLOC_FEM_HPP

#include <functional>
#include <vector>

#include "sgcolloc/common.hpp"

// Dyadic piecewise-linear FEM on D = (0,1) with homogeneous Dirichlet data:
// solves of -(a u')' = f, nodal prolongation between nested levels, the level
// differences delta_k, and the V- and W-norms.
//
// Level k has 2^(k+1) elements, so level-k nodes are a subset of level-(k+1)
// nodes and the coarsest level already carries one interior degree of freedom.

namespace sgc::fem {

using ScalarFn = std::function<double(double)>;

struct Mesh {
  int level = 0;
  int cells() const { return 1 << (level + 1); }
  int interior() const { return cells() - 1; }
  double h() const { return 1.0 / cells(); }
  double node(int i) const { return (i + 1) * h(); }  // interior node i
};

/// Piecewise-linear field on the level mesh; boundary values are zero.
struct Field {
  int level = 0;
  std::vector<double> values;  // interior nodal values

  static Field zeros(int level);
  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double c);
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(const Field& a, double c) {
    Field r = a;
    return r *= c;
  }
  friend Field operator*(double c, const Field& a) { return a * c; }

  double at(double x) const;  // piecewise-linear evaluation
};

/// Galerkin solve of -(a u')' = f on the level-k mesh, coefficient and source
/// sampled at 2-point Gauss nodes per element.  Throws NumericError if the
/// sampled coefficient is not strictly positive or if the residual
/// ||A u - b||_inf exceeds 1e-11 times the natural row scale |A||u| + |b|.
Field solve(int level, const ScalarFn& a, const ScalarFn& f);

/// Nodal embedding into a finer level (exact on the coarse space).
Field prolong(const Field& coarse, int to_level);

/// delta_k = P_{2^k} - P_{2^{k-1}} realized through level solves;
/// delta_0 is the coarsest solve.  The result lives on level k.
Field delta_level(int k, const ScalarFn& a, const ScalarFn& f);

/// H^1_0 seminorm (energy norm for a = 1), exact for piecewise-linear fields.
double norm_V(const Field& u);

double inner_V(const Field& u, const Field& v);

/// integral of the field over D
double mean_value(const Field& u);

/// V-norm of an analytic function from its derivative, by composite Gauss.
double norm_V_function(const ScalarFn& du);

/// W-norm ||u''||_{L2} of an analytic reference.  Raw FEM fields carry no L2
/// Laplacian, so only analytic data is accepted here.
double norm_W_function(const ScalarFn& ddu);

/// V-norm of (field - analytic reference) from the reference derivative.
double error_V(const Field& u, const ScalarFn& ref_du);

}  // namespace sgc::fem

#endif
