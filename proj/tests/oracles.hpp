#pragma once

// Reference computations used as independent oracles. Nothing here calls the
// library code under test beyond its plain data types; constants are spelled
// out again on purpose.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline constexpr double h = 6.62607015e-34;
inline constexpr double mu_b = 9.2740100783e-24;
inline constexpr double k_b = 1.380649e-23;
inline constexpr double c = 299792458.0;
inline constexpr double ev = 1.602176634e-19;
inline constexpr double pi = 3.14159265358979323846;

inline double gamma_nv(double g) { return g * mu_b / h; }

// D(T) from the two-mode Bose-Einstein model, written without expm1.
inline double zfs(double kelvin) {
  if (kelvin == 0.0) return 2.87e9;
  const double n1 = 1.0 / (std::exp(58.73e-3 * ev / (k_b * kelvin)) - 1.0);
  const double n2 = 1.0 / (std::exp(145.5e-3 * ev / (k_b * kelvin)) - 1.0);
  return 2.87e9 - 54.91e6 * n1 - 249.6e6 * n2;
}

// Second-order shift of the m_s = 0 level for a transverse field, Hz.
inline double tipt_e0(double b_par, double b_perp, double d_hz, double g) {
  const double gp = gamma_nv(g) * b_perp;
  const double gz = gamma_nv(g) * b_par;
  return -0.5 * gp * gp * (1.0 / (d_hz + gz) + 1.0 / (d_hz - gz));
}

using Mat7 = Eigen::Matrix<double, 7, 7>;
using Vec7 = Eigen::Matrix<double, 7, 1>;

// dn_i/dt = sum_j (k_ji n_j - k_ij n_i) as a dense generator.
inline Mat7 generator(const Mat7& k) {
  Mat7 q = Mat7::Zero();
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      if (i == j) continue;
      q(i, j) += k(j, i);
      q(i, i) -= k(i, j);
    }
  }
  return q;
}

// exp(Q t) by Taylor series on a scaled matrix, then repeated squaring.
inline Mat7 propagator(const Mat7& q, double t) {
  Mat7 a = q * t;
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::ldexp(1.0, squarings) > 0.25) ++squarings;
  a /= std::ldexp(1.0, squarings);
  Mat7 term = Mat7::Identity();
  Mat7 sum = Mat7::Identity();
  for (int n = 1; n <= 24; ++n) {
    term = term * a / static_cast<double>(n);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// Populations after evolving the rate equations from n0 for `t` seconds.
inline Vec7 evolve(const Mat7& k, const Vec7& n0, double t) { return propagator(generator(k), t) * n0; }

// k'_ij = sum_p sum_q |a_ip|^2 |a_jq|^2 k_pq, four nested loops.
inline Mat7 mixed_rates(const Mat7& alpha, const Mat7& k) {
  Mat7 out = Mat7::Zero();
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int p = 0; p < 7; ++p)
        for (int q = 0; q < 7; ++q)
          out(i, j) += alpha(i, p) * alpha(i, p) * alpha(j, q) * alpha(j, q) * k(p, q);
  return out;
}

// Zero-field table with optical pumping, filled entry by entry.
inline Mat7 pumped_table(double beta) {
  Mat7 k = Mat7::Zero();
  k(3, 0) = 63.2e6;
  k(4, 1) = 63.2e6;
  k(5, 2) = 63.2e6;
  k(0, 3) = beta * 63.2e6;
  k(1, 4) = beta * 63.2e6;
  k(2, 5) = beta * 63.2e6;
  k(3, 6) = 10.8e6;
  k(4, 6) = 60.7e6;
  k(5, 6) = 60.7e6;
  k(6, 0) = 0.8e6;
  k(6, 1) = 0.4e6;
  k(6, 2) = 0.4e6;
  return k;
}

inline double pl(const Vec7& n, const Mat7& k, double eta) {
  double r = 0.0;
  for (int i : {3, 4, 5})
    for (int j : {0, 1, 2}) r += n(i) * k(i, j);
  return eta * r;
}

// Composite Simpson rule on [a, b] with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double step = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * step) * (i % 2 ? 4.0 : 2.0);
  return s * step / 3.0;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double stddev(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace oracle
