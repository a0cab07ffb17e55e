#include "sgcolloc/orthopoly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace sgc::orthopoly {

double hermite_value(int k, double y) {
  if (k < 0) throw ConfigError("hermite_value: negative degree");
  double hm1 = 0.0, h = 1.0;
  for (int j = 0; j < k; ++j) {
    double hp = (y * h - std::sqrt(double(j)) * hm1) / std::sqrt(double(j + 1));
    hm1 = h;
    h = hp;
  }
  return h;
}

std::vector<double> hermite_all(int kmax, double y) {
  std::vector<double> out(kmax + 1);
  double hm1 = 0.0, h = 1.0;
  out[0] = 1.0;
  for (int j = 0; j < kmax; ++j) {
    double hp = (y * h - std::sqrt(double(j)) * hm1) / std::sqrt(double(j + 1));
    hm1 = h;
    h = hp;
    out[j + 1] = h;
  }
  return out;
}

double hermite_derivative(int k, double y) {
  if (k == 0) return 0.0;
  return std::sqrt(double(k)) * hermite_value(k - 1, y);
}

ScaledPair hermite_scaled(int k, double y) {
  if (k < 0) throw ConfigError("hermite_scaled: negative degree");
  ScaledPair s;
  for (int j = 0; j < k; ++j) {
    double hp =
        (y * s.frac_k - std::sqrt(double(j)) * s.frac_km1) / std::sqrt(double(j + 1));
    s.frac_km1 = s.frac_k;
    s.frac_k = hp;
    double m = std::max(std::abs(s.frac_k), std::abs(s.frac_km1));
    if (m > 0x1p512) {
      s.frac_k *= 0x1p-512;
      s.frac_km1 *= 0x1p-512;
      s.exp2 += 512;
    } else if (m > 0.0 && m < 0x1p-512) {
      s.frac_k *= 0x1p512;
      s.frac_km1 *= 0x1p512;
      s.exp2 -= 512;
    }
  }
  return s;
}

namespace {

// Eigenvalues of a symmetric tridiagonal Jacobi matrix, with first
// eigenvector components for the Gauss weights (Golub-Welsch).
struct GolubWelsch {
  std::vector<double> nodes;
  std::vector<double> first_row_sq;  // squared first components, sum to 1
};

// Eigenvalues only (no weight vector): O(n^2) tridiagonal QL instead of the
// dense eigensolve with eigenvector accumulation.
std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                        const std::vector<double>& offdiag) {
  const int n = int(diag.size());
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), n);
  Eigen::VectorXd e(n - 1);
  for (int i = 0; i + 1 < n; ++i) e(i) = offdiag[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("tridiag_eigenvalues: eigensolve failed");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

GolubWelsch golub_welsch(const std::vector<double>& diag,
                         const std::vector<double>& offdiag) {
  const int n = int(diag.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) J(i, i) = diag[i];
  for (int i = 0; i + 1 < n; ++i) {
    J(i, i + 1) = offdiag[i];
    J(i + 1, i) = offdiag[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  if (es.info() != Eigen::Success)
    throw NumericError("golub_welsch: eigensolve failed");
  GolubWelsch gw;
  gw.nodes.resize(n);
  gw.first_row_sq.resize(n);
  for (int i = 0; i < n; ++i) {
    gw.nodes[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    gw.first_row_sq[i] = v0 * v0;
  }
  return gw;
}

}  // namespace

std::vector<double> hermite_roots(int m) {
  if (m < 0) throw ConfigError("hermite_roots: negative level");
  const int n = m + 1;
  if (n == 1) return {0.0};
  std::vector<double> diag(n, 0.0), off(n - 1);
  for (int j = 1; j < n; ++j) off[j - 1] = std::sqrt(double(j));
  std::vector<double> r = tridiag_eigenvalues(diag, off);
  std::sort(r.begin(), r.end());
  // Newton polish with the scale-free correction H_n / (sqrt(n) H_{n-1}),
  // then enforce exact symmetry
  auto newton_step = [n](double x) {
    auto s = hermite_scaled(n, x);
    return s.frac_km1 == 0.0 ? 0.0
                             : s.frac_k / (std::sqrt(double(n)) * s.frac_km1);
  };
  for (double& x : r)
    for (int it = 0; it < 2; ++it) x -= newton_step(x);
  for (int i = 0; i < n / 2; ++i) {
    double s = 0.5 * (r[i] - r[n - 1 - i]);
    r[i] = s;
    r[n - 1 - i] = -s;
  }
  if (n % 2 == 1) r[n / 2] = 0.0;
  // the Newton correction |H/H'| is the right residual scale; the raw value
  // |H(x)| blows up with the derivative near the extreme roots
  for (double x : r)
    if (std::abs(newton_step(x)) > 1e-12 * std::max(1.0, std::abs(x)))
      throw NumericError("hermite_roots: residual above tolerance at m=" +
                         std::to_string(m));
  return r;
}

double mrs_number(int m) {
  if (m < 1) throw ConfigError("mrs_number: m must be >= 1");
  return std::sqrt(double(m));
}

double jacobi_norm_const(int k, double a, double b) {
  if (a <= -1.0 || b <= -1.0) throw ConfigError("jacobi: parameters must be > -1");
  if (k == 0) return 1.0;
  double lg = std::log(2.0 * k + a + b + 1.0) + std::lgamma(double(k + 1)) +
              std::lgamma(k + a + b + 1.0) + std::lgamma(a + 1.0) +
              std::lgamma(b + 1.0) - std::lgamma(k + a + 1.0) -
              std::lgamma(k + b + 1.0) - std::lgamma(a + b + 2.0);
  return std::exp(0.5 * lg);
}

namespace {

// Recurrence coefficients of the monic Jacobi polynomials, normalized so the
// measure has unit mass (beta_0 = 1).
void jacobi_recurrence(int n, double a, double b, std::vector<double>& alpha,
                       std::vector<double>& beta) {
  if (a <= -1.0 || b <= -1.0) throw ConfigError("jacobi: parameters must be > -1");
  alpha.resize(n);
  beta.resize(n);
  for (int j = 0; j < n; ++j) {
    double t = 2.0 * j + a + b;
    if (j == 0)
      alpha[j] = (b - a) / (a + b + 2.0);
    else
      alpha[j] = (b * b - a * a) / (t * (t + 2.0));
  }
  beta[0] = 1.0;
  for (int j = 1; j < n; ++j) {
    double t = 2.0 * j + a + b;
    if (j == 1)
      beta[j] = 4.0 * (1.0 + a) * (1.0 + b) /
                ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    else
      beta[j] = 4.0 * j * (j + a) * (j + b) * (j + a + b) /
                (t * t * (t + 1.0) * (t - 1.0));
  }
}

}  // namespace

std::vector<double> jacobi_all(int kmax, double y, double a, double b) {
  std::vector<double> alpha, beta;
  jacobi_recurrence(kmax + 1, a, b, alpha, beta);
  std::vector<double> out(kmax + 1);
  double pm1 = 0.0, p = 1.0;
  out[0] = 1.0;
  for (int j = 0; j < kmax; ++j) {
    double pp = ((y - alpha[j]) * p - (j > 0 ? std::sqrt(beta[j]) : 0.0) * pm1) /
                std::sqrt(beta[j + 1]);
    pm1 = p;
    p = pp;
    out[j + 1] = p;
  }
  return out;
}

double jacobi_value(int k, double y, double a, double b) {
  return jacobi_all(k, y, a, b)[k];
}

std::vector<double> jacobi_roots(int m, double a, double b) {
  const int n = m + 1;
  std::vector<double> alpha, beta;
  jacobi_recurrence(n + 1, a, b, alpha, beta);
  if (n == 1) return {alpha[0]};
  std::vector<double> diag(alpha.begin(), alpha.begin() + n), off(n - 1);
  for (int j = 1; j < n; ++j) off[j - 1] = std::sqrt(beta[j]);
  std::vector<double> r = tridiag_eigenvalues(diag, off);
  std::sort(r.begin(), r.end());
  if (a == b) {
    for (int i = 0; i < n / 2; ++i) {
      double s = 0.5 * (r[i] - r[n - 1 - i]);
      r[i] = s;
      r[n - 1 - i] = -s;
    }
    if (n % 2 == 1) r[n / 2] = 0.0;
  }
  return r;
}

GaussRule gauss_hermite_rule(int n) {
  if (n < 1) throw ConfigError("gauss_hermite_rule: need n >= 1");
  if (n == 1) return {{0.0}, {1.0}};
  // polished roots plus the closed-form weights 1 / (n H_{n-1}(x)^2); the
  // dense eigenvector route loses all relative accuracy in the tiny tail
  // weights once n grows
  GaussRule rule;
  rule.points = hermite_roots(n - 1);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    auto s = hermite_scaled(n - 1, rule.points[k]);
    rule.weights[k] =
        std::ldexp(1.0 / (double(n) * s.frac_k * s.frac_k), int(-2 * s.exp2));
  }
  return rule;
}

GaussRule gauss_jacobi_rule(int n, double a, double b) {
  if (n < 1) throw ConfigError("gauss_jacobi_rule: need n >= 1");
  std::vector<double> alpha, beta;
  jacobi_recurrence(n, a, b, alpha, beta);
  if (n == 1) return {{alpha[0]}, {1.0}};
  std::vector<double> off(n - 1);
  for (int j = 1; j < n; ++j) off[j - 1] = std::sqrt(beta[j]);
  auto gw = golub_welsch(alpha, off);
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](int i, int j) { return gw.nodes[i] < gw.nodes[j]; });
  GaussRule rule;
  for (int i : idx) {
    rule.points.push_back(gw.nodes[i]);
    rule.weights.push_back(gw.first_row_sq[i]);
  }
  return rule;
}

}  // namespace sgc::orthopoly
