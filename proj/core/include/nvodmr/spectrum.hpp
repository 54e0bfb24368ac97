#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "nvodmr/ensemble.hpp"
#include "nvodmr/microwave.hpp"
#include "nvodmr/noise.hpp"
#include "nvodmr/physics.hpp"
#include "nvodmr/seven_level.hpp"

namespace nvodmr {

struct SweepGrid {
  double f_start_hz = 2.82e9;
  double f_end_hz = 2.92e9;
  std::size_t n_freq = 501;

  /// linspace(f_start, f_end, n_freq).
  std::vector<double> frequencies() const;
  double step_hz() const { return (f_end_hz - f_start_hz) / static_cast<double>(n_freq - 1); }
  void validate() const;
};

/// Everything the forward model needs besides the field, the noise and the
/// sweep. Defaults follow the reference parameter table.
struct ApparatusConfig {
  double laser_power_w = 0.1;
  double beam_waist_m = 1e-5;
  double cross_section_m2 = 9e-21;
  double eta = 1.0;
  double temperature_k = 300.0;

  double mw_power_w = 0.1;  // 20 dBm
  double mw_theta_rad = 0.0;
  double mw_phi_rad = 0.0;
  double antenna_t_per_sqrt_w = kDefaultAntennaConstant;
  double rate_calibration = kDefaultRateCalibration;

  LinewidthParams linewidth;
  ZeroFieldRates rates;
  OrientationWeights weights = uniform_weights();

  MwDrive mw_drive() const {
    return {mw_power_w, antenna_t_per_sqrt_w, mw_theta_rad, mw_phi_rad};
  }
  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct Spectrum {
  std::vector<double> freqs_hz;
  std::vector<double> contrast;
  /// Total detected photons per point; empty unless shot noise was applied.
  std::vector<std::int64_t> photon_counts;
  nlohmann::json metadata = nlohmann::json::object();

  std::size_t size() const { return freqs_hz.size(); }
};

/// Runs the ensemble simulation for a lab-frame field. `pixel` selects the
/// noise streams, so distinct pixels draw independent noise.
Spectrum simulate_spectrum(const FieldVector& b_lab, const ApparatusConfig& apparatus,
                           const NoiseConfig& noise, const SweepGrid& sweep,
                           std::uint64_t pixel = 0);

/// 10 log10(sum ref^2 / sum (noisy - ref)^2) in dB; +infinity when the
/// residual is exactly zero.
double snr_db(const std::vector<double>& noisy, const std::vector<double>& reference);
double snr_of_spectrum(const Spectrum& noisy, const Spectrum& reference);

}  // namespace nvodmr
