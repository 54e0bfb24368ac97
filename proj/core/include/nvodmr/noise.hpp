#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

#include "nvodmr/constants.hpp"
#include "nvodmr/physics.hpp"

namespace nvodmr {

enum class GDistribution { kUniform, kNormal };

/// Every stochastic source with its own switch. Default-constructed values
/// enable the per-point technical noise (laser and MW power) and photon shot
/// noise; the quasi-static sources keep their reference magnitudes but start
/// disabled.
struct NoiseConfig {
  std::uint64_t seed = 0;

  bool shot_noise = true;
  bool shot_noise_baseline = false;
  double integration_time_s = 1e-3;

  // Power std-devs are fractions of the nominal power.
  bool laser_power = true;
  double laser_power_rel_std = 0.005;
  bool mw_power = true;
  double mw_power_rel_std = 0.005;

  bool mw_phase = false;
  double mw_phase_field_std_t = 1e-12;
  bool mw_freq_jitter = false;
  double mw_freq_jitter_std_hz = 1e4;

  // t2_star_s also sets the zero-drive linewidth floor 1/(pi T2*), which is
  // used whether or not dephasing noise is enabled.
  bool dephasing = false;
  double t2_star_s = 0.5e-6;
  bool t2_star_spread = false;
  double t2_star_std_s = 0.05e-6;

  bool g_spread = false;
  double g_std = 0.0003;
  GDistribution g_distribution = GDistribution::kUniform;

  bool surface_field = false;
  double surface_field_std_t = 5e-9;

  bool temperature_drift = false;
  double drift_start_k = 295.15;
  double drift_end_k = 301.15;

  /// Every source off; the spectrum is then a deterministic function of the
  /// apparatus alone.
  static NoiseConfig disabled();
  bool any_enabled() const;
  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Child stream tags. A stream is identified by (seed, tag, pixel,
/// orientation, frequency index), so draws never depend on execution order.
enum class StreamTag : std::uint64_t {
  kSpectrum = 1,
  kBranch = 2,
  kPoint = 3,
  kShot = 4,
  kBaselineShot = 5,
};

class RandomSource {
 public:
  using Engine = std::mt19937_64;

  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);
  /// Stream derived from the root seed and a list of identifiers.
  static RandomSource derive(std::uint64_t seed, StreamTag tag,
                             std::initializer_list<std::uint64_t> ids);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  Engine& engine() { return engine_; }

  double normal(double mean, double std);
  double uniform(double lo, double hi);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  Engine engine_;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// N(nominal, std^2) clamped at 0; std = 0 returns nominal without drawing.
double sample_gaussian_power(double nominal_w, double std_w, RandomSource& rng);

/// Poisson(n_ideal); above 1e6 the rounded normal approximation N(n, n).
std::int64_t shot_noise(double n_ideal, RandomSource& rng);

/// D_gs shift drawn from N(0, (1/T2*)^2), Hz.
double dephasing_shift(double t2_star_s, RandomSource& rng);

/// g factor around 2.0028; the uniform mode matches the requested std.
double sample_g(double g_std, GDistribution distribution, RandomSource& rng);

/// T2* from N(mean, std^2), truncated below at 0.1 * mean.
double sample_t2_star(double mean_s, double std_s, RandomSource& rng);

FieldVector surface_field(double std_t, RandomSource& rng);

double mw_freq_jitter(double nu_hz, double std_hz, RandomSource& rng);

/// Axial field (Tesla) standing in for MW phase noise.
double mw_phase_as_field(double std_t, RandomSource& rng);

/// Linear drift T_a + (T_b - T_a) k / (N - 1).
double drifting_temperature(std::size_t k, std::size_t n_points, double start_k, double end_k);

/// I0 exp(-2 (x^2 + y^2) / w0^2).
double gaussian_beam_intensity(double x_m, double y_m, double i0, double beam_waist_m);

}  // namespace nvodmr
