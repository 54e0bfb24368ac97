#include "nvodmr/filters.hpp"

#include <algorithm>
#include <cmath>

#include "nvodmr/error.hpp"

namespace nvodmr {

std::size_t gaussian_radius(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidArgument("gaussian filter: sigma must be >= 0");
  return static_cast<std::size_t>(4.0 * sigma + 0.5);
}

std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) {
  if (n == 0) throw InvalidArgument("reflect_index: empty array");
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  return static_cast<std::size_t>(m < static_cast<std::ptrdiff_t>(n) ? m : period - 1 - m);
}

std::vector<double> gaussian_filter_1d(std::span<const double> y, double sigma) {
  const std::size_t radius = gaussian_radius(sigma);
  std::vector<double> out(y.begin(), y.end());
  if (sigma == 0.0 || radius == 0 || y.empty()) return out;

  std::vector<double> kernel(2 * radius + 1);
  double total = 0.0;
  for (std::size_t k = 0; k < kernel.size(); ++k) {
    const double d = static_cast<double>(k) - static_cast<double>(radius);
    kernel[k] = std::exp(-0.5 * d * d / (sigma * sigma));
    total += kernel[k];
  }
  for (double& w : kernel) w /= total;

  const auto r = static_cast<std::ptrdiff_t>(radius);
  for (std::size_t i = 0; i < y.size(); ++i) {
    double acc = 0.0;
    for (std::ptrdiff_t d = -r; d <= r; ++d) {
      acc += kernel[static_cast<std::size_t>(d + r)] *
             y[reflect_index(static_cast<std::ptrdiff_t>(i) + d, y.size())];
    }
    out[i] = acc;
  }
  return out;
}

std::vector<double> bilateral_filter_1d(std::span<const double> y, double sigma_s, double sigma_r,
                                        std::size_t window) {
  if (!(sigma_s > 0.0) || !std::isfinite(sigma_s)) throw InvalidArgument("bilateral filter: sigma_s must be > 0");
  if (!(sigma_r > 0.0)) throw InvalidArgument("bilateral filter: sigma_r must be > 0");
  if (window < 1) throw InvalidArgument("bilateral filter: window must be >= 1");

  std::vector<double> out(y.size());
  if (y.empty()) return out;
  const auto r = static_cast<std::ptrdiff_t>(std::min(window, gaussian_radius(sigma_s)));
  const bool flat_range = std::isinf(sigma_r);
  for (std::size_t i = 0; i < y.size(); ++i) {
    double acc = 0.0;
    double norm = 0.0;
    for (std::ptrdiff_t d = -r; d <= r; ++d) {
      const double yj = y[reflect_index(static_cast<std::ptrdiff_t>(i) + d, y.size())];
      const double dd = static_cast<double>(d);
      double w = std::exp(-0.5 * dd * dd / (sigma_s * sigma_s));
      if (!flat_range) {
        const double dy = yj - y[i];
        w *= std::exp(-0.5 * dy * dy / (sigma_r * sigma_r));
      }
      acc += w * yj;
      norm += w;
    }
    out[i] = acc / norm;
  }
  return out;
}

}  // namespace nvodmr
