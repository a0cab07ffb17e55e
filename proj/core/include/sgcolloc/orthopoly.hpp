#ifndef SGCOLLOC_ORTHOPOLY_HPP
#define SGCOLLOC_ORTHOPOLY_HPP

#include <vector>

#include "sgcolloc/common.hpp"

// Orthonormal Hermite (probabilists', unit Gaussian weight) and Jacobi
// polynomials: stable evaluation, roots, and Gauss rules.  All families are
// normalized against their probability measure, so the degree-0 polynomial
// is identically 1 and the quadrature weights of every rule sum to 1.

namespace sgc::orthopoly {

/// H_k(y), the Hermite polynomial orthonormal w.r.t. the standard Gaussian.
/// Recurrence H_{k+1} = (y H_k - sqrt(k) H_{k-1}) / sqrt(k+1); no factorials
/// are formed, so values stay finite up to very high degree.
double hermite_value(int k, double y);

/// All values H_0(y), ..., H_kmax(y) in one sweep.
std::vector<double> hermite_all(int kmax, double y);

/// Derivative H_k'(y) = sqrt(k) H_{k-1}(y).
double hermite_derivative(int k, double y);

/// H_k(y) and H_{k-1}(y) as (fraction, base-2 exponent) pairs: the true
/// values are frac * 2^exp2.  The recurrence rescales periodically, so this
/// never overflows even where the plain values exceed the double range
/// (large degree at the extreme roots).
struct ScaledPair {
  double frac_k = 1.0, frac_km1 = 0.0;
  long exp2 = 0;  // shared exponent
};
ScaledPair hermite_scaled(int k, double y);

/// Strictly increasing roots of H_{m+1} (m+1 of them, symmetric about 0).
/// Symmetric tridiagonal eigensolve followed by Newton polish; the Newton
/// correction |H/H'| is the accepted residual measure.
std::vector<double> hermite_roots(int m);

/// Mhaskar-Rakhmanov-Saff number for the weight sqrt(g): a_m = sqrt(m).
double mrs_number(int m);

/// Normalization constant c_k^{a,b} of the Jacobi family (c_0 = 1).
double jacobi_norm_const(int k, double a, double b);

/// J_k(y), orthonormal w.r.t. the Jacobi probability measure
/// c_{a,b} (1-y)^a (1+y)^b dy on [-1,1].  Throws ConfigError if a or b <= -1.
double jacobi_value(int k, double y, double a, double b);

std::vector<double> jacobi_all(int kmax, double y, double a, double b);

/// Strictly increasing roots of the degree-(m+1) orthonormal Jacobi polynomial.
std::vector<double> jacobi_roots(int m, double a, double b);

/// An n-point Gauss rule; weights sum to 1 (probability measure).
struct GaussRule {
  std::vector<double> points;
  std::vector<double> weights;
};

/// n-point Gauss-Hermite rule for the standard Gaussian measure.
GaussRule gauss_hermite_rule(int n);

/// n-point Gauss-Jacobi rule for the Jacobi probability measure.
GaussRule gauss_jacobi_rule(int n, double a, double b);

}  // namespace sgc::orthopoly

#endif
