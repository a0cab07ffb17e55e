#include "sgcolloc/fem.hpp"

#include <cmath>

namespace sgc::fem {

namespace {

// 2-point Gauss on [0,1]
constexpr double kG2a = 0.21132486540518713;  // (1 - 1/sqrt(3)) / 2
constexpr double kG2b = 0.78867513459481287;

// 4-point Gauss on [0,1] for error integrals
constexpr double kG4x[4] = {0.06943184420297371, 0.33000947820757187,
                            0.66999052179242813, 0.93056815579702629};
constexpr double kG4w[4] = {0.17392742256872693, 0.32607257743127307,
                            0.32607257743127307, 0.17392742256872693};

}  // namespace

Field Field::zeros(int level) {
  Field f;
  f.level = level;
  f.values.assign(Mesh{level}.interior(), 0.0);
  return f;
}

Field& Field::operator+=(const Field& o) {
  if (level != o.level) throw UsageError("Field: level mismatch in +=");
  for (size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  if (level != o.level) throw UsageError("Field: level mismatch in -=");
  for (size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
  return *this;
}

Field& Field::operator*=(double c) {
  for (double& v : values) v *= c;
  return *this;
}

double Field::at(double x) const {
  Mesh mesh{level};
  double h = mesh.h();
  if (x <= 0.0 || x >= 1.0) return 0.0;
  int cell = std::min(int(x / h), mesh.cells() - 1);
  double xl = cell * h;
  double vl = cell == 0 ? 0.0 : values[cell - 1];
  double vr = cell == mesh.cells() - 1 ? 0.0 : values[cell];
  return vl + (vr - vl) * (x - xl) / h;
}

Field solve(int level, const ScalarFn& a, const ScalarFn& f) {
  Mesh mesh{level};
  const int n = mesh.interior();
  const double h = mesh.h();
  std::vector<double> diag(n, 0.0), lower(n - 1, 0.0), upper(n - 1, 0.0),
      rhs(n, 0.0);
  for (int e = 0; e < mesh.cells(); ++e) {
    double xl = e * h;
    double a1 = a(xl + kG2a * h), a2 = a(xl + kG2b * h);
    if (!(a1 > 0.0) || !(a2 > 0.0))
      throw NumericError("fem::solve: coefficient not strictly positive");
    double ke = 0.5 * (a1 + a2) / h;  // int_elem a / h^2 * h
    int li = e - 1, ri = e;           // interior indices of the element nodes
    if (li >= 0) diag[li] += ke;
    if (ri < n) diag[ri] += ke;
    if (li >= 0 && ri < n) {
      lower[li] -= ke;
      upper[li] -= ke;
    }
    double f1 = f(xl + kG2a * h), f2 = f(xl + kG2b * h);
    // hat-function values at the 2 Gauss points of this element
    if (li >= 0) rhs[li] += 0.5 * h * (f1 * (1.0 - kG2a) + f2 * (1.0 - kG2b));
    if (ri < n) rhs[ri] += 0.5 * h * (f1 * kG2a + f2 * kG2b);
  }
  // Thomas solve
  std::vector<double> cp(n - 1), dp(n);
  double den = diag[0];
  if (den == 0.0) throw NumericError("fem::solve: singular system");
  if (n > 1) cp[0] = upper[0] / den;
  dp[0] = rhs[0] / den;
  for (int i = 1; i < n; ++i) {
    den = diag[i] - lower[i - 1] * cp[i - 1];
    if (den == 0.0) throw NumericError("fem::solve: singular system");
    if (i < n - 1) cp[i] = upper[i] / den;
    dp[i] = (rhs[i] - lower[i - 1] * dp[i - 1]) / den;
  }
  Field u = Field::zeros(level);
  u.values[n - 1] = dp[n - 1];
  for (int i = n - 2; i >= 0; --i)
    u.values[i] = dp[i] - cp[i] * u.values[i + 1];
  // residual check; rounding in the solve scales with |A||u|, which grows
  // like 1/h, so the tolerance must include that term, not just |b|
  double rmax = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = diag[i] * u.values[i] - rhs[i];
    double row = std::abs(diag[i] * u.values[i]);
    if (i > 0) {
      r += lower[i - 1] * u.values[i - 1];
      row += std::abs(lower[i - 1] * u.values[i - 1]);
    }
    if (i < n - 1) {
      r += upper[i] * u.values[i + 1];
      row += std::abs(upper[i] * u.values[i + 1]);
    }
    rmax = std::max(rmax, std::abs(r));
    scale = std::max(scale, row + std::abs(rhs[i]));
  }
  if (scale > 0 && rmax > 1e-11 * scale)
    throw NumericError("fem::solve: residual check failed");
  return u;
}

Field prolong(const Field& coarse, int to_level) {
  if (to_level < coarse.level)
    throw UsageError("prolong: target level below source level");
  Field out = Field::zeros(to_level);
  Mesh fine{to_level};
  const int r = 1 << (to_level - coarse.level);
  const int nc = Mesh{coarse.level}.interior();
  for (int i = 0; i < fine.interior(); ++i) {
    int pos = i + 1;  // fine node number in units of h_fine
    int cl = pos / r; // coarse cell index
    int rem = pos - cl * r;
    double vl = cl >= 1 ? coarse.values[cl - 1] : 0.0;
    if (rem == 0) {
      out.values[i] = vl;  // coincident node, exact embedding
    } else {
      double vr = cl < nc ? coarse.values[cl] : 0.0;
      out.values[i] = vl + (vr - vl) * double(rem) / double(r);
    }
  }
  return out;
}

Field delta_level(int k, const ScalarFn& a, const ScalarFn& f) {
  if (k < 0) throw ConfigError("delta_level: k must be >= 0");
  Field fine = solve(k, a, f);
  if (k == 0) return fine;
  return fine - prolong(solve(k - 1, a, f), k);
}

double norm_V(const Field& u) { return std::sqrt(inner_V(u, u)); }

double inner_V(const Field& u, const Field& v) {
  if (u.level != v.level) throw UsageError("inner_V: level mismatch");
  Mesh mesh{u.level};
  double h = mesh.h();
  double acc = 0.0;
  for (int e = 0; e < mesh.cells(); ++e) {
    int li = e - 1, ri = e;
    double dul = li >= 0 ? u.values[li] : 0.0;
    double dur = ri < mesh.interior() ? u.values[ri] : 0.0;
    double dvl = li >= 0 ? v.values[li] : 0.0;
    double dvr = ri < mesh.interior() ? v.values[ri] : 0.0;
    acc += (dur - dul) * (dvr - dvl) / h;
  }
  return acc;
}

double mean_value(const Field& u) {
  Mesh mesh{u.level};
  double h = mesh.h();
  double acc = 0.0;
  for (int i = 0; i < mesh.interior(); ++i) acc += u.values[i] * h;
  return acc;  // trapezoid with zero boundary values, exact for pw-linear
}

namespace {

double composite_gauss_sq(const ScalarFn& fn, int cells) {
  double h = 1.0 / cells;
  double acc = 0.0;
  for (int e = 0; e < cells; ++e) {
    double xl = e * h;
    for (int g = 0; g < 4; ++g) {
      double v = fn(xl + kG4x[g] * h);
      acc += kG4w[g] * h * v * v;
    }
  }
  return acc;
}

}  // namespace

double norm_V_function(const ScalarFn& du) {
  return std::sqrt(composite_gauss_sq(du, 1 << 12));
}

double norm_W_function(const ScalarFn& ddu) {
  return std::sqrt(composite_gauss_sq(ddu, 1 << 12));
}

double error_V(const Field& u, const ScalarFn& ref_du) {
  Mesh mesh{u.level};
  double h = mesh.h();
  double acc = 0.0;
  for (int e = 0; e < mesh.cells(); ++e) {
    int li = e - 1, ri = e;
    double vl = li >= 0 ? u.values[li] : 0.0;
    double vr = ri < mesh.interior() ? u.values[ri] : 0.0;
    double slope = (vr - vl) / h;
    double xl = e * h;
    for (int g = 0; g < 4; ++g) {
      double d = slope - ref_du(xl + kG4x[g] * h);
      acc += kG4w[g] * h * d * d;
    }
  }
  return std::sqrt(acc);
}

}  // namespace sgc::fem
