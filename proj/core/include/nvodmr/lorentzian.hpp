#pragma once

#include <span>

namespace nvodmr {

struct LorentzianParams {
  double amplitude = 0.0;
  double center = 0.0;
  /// Half width at half maximum, same units as x.
  double gamma = 0.0;
};

struct LorentzianFit {
  LorentzianParams params;
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;

  double fwhm() const { return 2.0 * params.gamma; }
};

/// A gamma^2 / ((x - x0)^2 + gamma^2).
double lorentzian_eval(double x, double amplitude, double center, double gamma);
inline double lorentzian_eval(double x, const LorentzianParams& p) {
  return lorentzian_eval(x, p.amplitude, p.center, p.gamma);
}

struct LorentzianFitOptions {
  int max_iterations = 200;
  double step_tolerance = 1e-10;
};

/// Levenberg-Marquardt least squares on x/y rescaled to O(1). The model is
/// even in gamma, so the reported gamma is |gamma|. Hitting the iteration
/// limit returns the best parameters with converged = false.
///
/// Throws InvalidArgument for fewer than 5 samples, mismatched lengths or a
/// non-positive initial gamma.
LorentzianFit lorentzian_fit(std::span<const double> x, std::span<const double> y,
                             const LorentzianParams& init, const LorentzianFitOptions& options = {});

}  // namespace nvodmr
