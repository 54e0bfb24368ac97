#include "nvodmr/lorentzian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "nvodmr/error.hpp"

namespace nvodmr {

namespace {

constexpr std::size_t kMinSamples = 5;
constexpr double kLambdaStart = 1e-3;
constexpr double kLambdaMax = 1e16;

double cost(const std::vector<double>& u, const std::vector<double>& v, const Eigen::Vector3d& p) {
  double c = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = v[i] - lorentzian_eval(u[i], p(0), p(1), p(2));
    c += r * r;
  }
  return c;
}

}  // namespace

double lorentzian_eval(double x, double amplitude, double center, double gamma) {
  const double d = x - center;
  const double g2 = gamma * gamma;
  return amplitude * g2 / (d * d + g2);
}

LorentzianFit lorentzian_fit(std::span<const double> x, std::span<const double> y,
                             const LorentzianParams& init, const LorentzianFitOptions& options) {
  if (x.size() != y.size()) throw InvalidArgument("lorentzian_fit: x and y lengths differ");
  if (x.size() < kMinSamples) throw InvalidArgument("lorentzian_fit: need at least 5 samples");
  if (!(init.gamma > 0.0)) throw InvalidArgument("lorentzian_fit: initial gamma must be > 0");

  const auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
  const double x_mid = 0.5 * (*xmin_it + *xmax_it);
  const double x_scale = std::max(0.5 * (*xmax_it - *xmin_it), std::numeric_limits<double>::min());
  double y_scale = 0.0;
  for (double v : y) y_scale = std::max(y_scale, std::abs(v));
  if (y_scale == 0.0) y_scale = std::max(std::abs(init.amplitude), 1.0);

  std::vector<double> u(x.size());
  std::vector<double> v(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    u[i] = (x[i] - x_mid) / x_scale;
    v[i] = y[i] / y_scale;
  }

  Eigen::Vector3d p(init.amplitude / y_scale, (init.center - x_mid) / x_scale, init.gamma / x_scale);
  double c = cost(u, v, p);
  double lambda = kLambdaStart;

  LorentzianFit fit;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double d = u[i] - p(1);
      const double g = p(2);
      const double den = d * d + g * g;
      const double shape = g * g / den;
      Eigen::Vector3d j(shape, p(0) * shape * 2.0 * d / den, 2.0 * p(0) * g * d * d / (den * den));
      const double r = v[i] - p(0) * shape;
      jtj += j * j.transpose();
      jtr += j * r;
    }

    bool accepted = false;
    Eigen::Vector3d step = Eigen::Vector3d::Zero();
    while (lambda <= kLambdaMax) {
      Eigen::Matrix3d a = jtj;
      for (int k = 0; k < 3; ++k) a(k, k) += lambda * std::max(jtj(k, k), 1e-12);
      step = a.ldlt().solve(jtr);
      const Eigen::Vector3d trial = p + step;
      const double c_trial = cost(u, v, trial);
      if (std::isfinite(c_trial) && c_trial <= c) {
        p = trial;
        c = c_trial;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 10.0;
    }
    // No downhill step at any damping: p is a local minimum to working
    // precision.
    if (!accepted) {
      fit.converged = true;
      break;
    }
    if (step.norm() <= options.step_tolerance * (p.norm() + options.step_tolerance)) {
      fit.converged = true;
      ++iter;
      break;
    }
  }

  fit.iterations = iter;
  fit.params.amplitude = p(0) * y_scale;
  fit.params.center = p(1) * x_scale + x_mid;
  fit.params.gamma = std::abs(p(2)) * x_scale;
  fit.residual_norm = std::sqrt(c) * y_scale;
  return fit;
}

}  // namespace nvodmr
