#include "nvodmr/noise.hpp"

#include <algorithm>
#include <cmath>

#include "nvodmr/error.hpp"

namespace nvodmr {

namespace {

constexpr double kPoissonNormalThreshold = 1e6;
constexpr double kT2TruncationFraction = 0.1;

void require_nonnegative(double value, const char* field) {
  if (!(value >= 0.0) || !std::isfinite(value)) throw ConfigError(field, "must be finite and >= 0");
}

}  // namespace

NoiseConfig NoiseConfig::disabled() {
  NoiseConfig n;
  n.shot_noise = false;
  n.laser_power = false;
  n.mw_power = false;
  return n;
}

bool NoiseConfig::any_enabled() const {
  return shot_noise || laser_power || mw_power || mw_phase || mw_freq_jitter || dephasing ||
         t2_star_spread || g_spread || surface_field || temperature_drift;
}

void NoiseConfig::validate() const {
  require_nonnegative(laser_power_rel_std, "noise.laser_power_rel_std");
  require_nonnegative(mw_power_rel_std, "noise.mw_power_rel_std");
  require_nonnegative(mw_phase_field_std_t, "noise.mw_phase_field_std");
  require_nonnegative(mw_freq_jitter_std_hz, "noise.mw_freq_jitter_std");
  require_nonnegative(t2_star_std_s, "noise.t2_star_std");
  require_nonnegative(g_std, "noise.g_std");
  require_nonnegative(surface_field_std_t, "noise.surface_field_std");
  if (!(integration_time_s > 0.0)) throw ConfigError("noise.integration_time", "must be > 0");
  if (!(t2_star_s > 0.0)) throw ConfigError("noise.t2_star", "must be > 0");
  if (!(drift_start_k >= 0.0) || !(drift_end_k >= 0.0)) {
    throw ConfigError("noise.temperature_drift", "temperatures must be >= 0 K");
  }
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(mix64(seed ^ mix64(stream))) {}

RandomSource RandomSource::derive(std::uint64_t seed, StreamTag tag,
                                  std::initializer_list<std::uint64_t> ids) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(tag));
  for (std::uint64_t id : ids) h = mix64(h ^ mix64(id + 0x632be59bd9b4e019ULL));
  return RandomSource(seed, h);
}

double RandomSource::normal(double mean, double std) {
  return std::normal_distribution<double>(mean, std)(engine_);
}

double RandomSource::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double sample_gaussian_power(double nominal_w, double std_w, RandomSource& rng) {
  if (std_w < 0.0) throw InvalidArgument("sample_gaussian_power: std must be >= 0");
  if (std_w == 0.0) return nominal_w;
  return std::max(0.0, rng.normal(nominal_w, std_w));
}

std::int64_t shot_noise(double n_ideal, RandomSource& rng) {
  if (!(n_ideal >= 0.0)) throw InvalidArgument("shot_noise: expected count must be >= 0");
  if (n_ideal == 0.0) return 0;
  if (n_ideal > kPoissonNormalThreshold) {
    const double draw = std::round(rng.normal(n_ideal, std::sqrt(n_ideal)));
    return static_cast<std::int64_t>(std::max(0.0, draw));
  }
  return std::poisson_distribution<std::int64_t>(n_ideal)(rng.engine());
}

double dephasing_shift(double t2_star_s, RandomSource& rng) {
  if (!(t2_star_s > 0.0)) throw InvalidArgument("dephasing_shift: T2* must be > 0");
  return rng.normal(0.0, 1.0 / t2_star_s);
}

double sample_g(double g_std, GDistribution distribution, RandomSource& rng) {
  if (g_std < 0.0) throw InvalidArgument("sample_g: std must be >= 0");
  if (g_std == 0.0) return constants::kGFactor;
  if (distribution == GDistribution::kNormal) return rng.normal(constants::kGFactor, g_std);
  const double half = std::sqrt(3.0) * g_std;
  return rng.uniform(constants::kGFactor - half, constants::kGFactor + half);
}

double sample_t2_star(double mean_s, double std_s, RandomSource& rng) {
  if (!(mean_s > 0.0) || std_s < 0.0) throw InvalidArgument("sample_t2_star: bad mean or std");
  if (std_s == 0.0) return mean_s;
  return std::max(kT2TruncationFraction * mean_s, rng.normal(mean_s, std_s));
}

FieldVector surface_field(double std_t, RandomSource& rng) {
  if (std_t < 0.0) throw InvalidArgument("surface_field: std must be >= 0");
  if (std_t == 0.0) return FieldVector::Zero();
  const double x = rng.normal(0.0, std_t);
  const double y = rng.normal(0.0, std_t);
  const double z = rng.normal(0.0, std_t);
  return {x, y, z};
}

double mw_freq_jitter(double nu_hz, double std_hz, RandomSource& rng) {
  if (std_hz < 0.0) throw InvalidArgument("mw_freq_jitter: std must be >= 0");
  if (std_hz == 0.0) return nu_hz;
  return nu_hz + rng.normal(0.0, std_hz);
}

double mw_phase_as_field(double std_t, RandomSource& rng) {
  if (std_t < 0.0) throw InvalidArgument("mw_phase_as_field: std must be >= 0");
  if (std_t == 0.0) return 0.0;
  return rng.normal(0.0, std_t);
}

double drifting_temperature(std::size_t k, std::size_t n_points, double start_k, double end_k) {
  if (n_points < 2) throw InvalidArgument("drifting_temperature: need at least 2 points");
  if (k >= n_points) throw InvalidArgument("drifting_temperature: index out of range");
  return start_k + (end_k - start_k) * static_cast<double>(k) / static_cast<double>(n_points - 1);
}

double gaussian_beam_intensity(double x_m, double y_m, double i0, double beam_waist_m) {
  if (!(beam_waist_m > 0.0)) throw InvalidArgument("gaussian_beam_intensity: w0 must be > 0");
  return i0 * std::exp(-2.0 * (x_m * x_m + y_m * y_m) / (beam_waist_m * beam_waist_m));
}

}  // namespace nvodmr
