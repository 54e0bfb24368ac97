#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nvodmr/noise.hpp"
#include "nvodmr/optimize.hpp"
#include "nvodmr/reconstruct.hpp"
#include "nvodmr/spectrum.hpp"
#include "nvodmr/widefield.hpp"

namespace nvodmr {

/// P[W] = 10^((dBm - 30) / 10).
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

inline constexpr double kMinMwPowerDbm = 5.0;
inline constexpr double kMaxMwPowerDbm = 50.0;

struct ReconstructConfig {
  std::string input;
  /// Detection threshold as a fraction of the maximum contrast.
  double relative_prominence = 0.1;
  AxisOrder axis_order = AxisOrder::kPrinted;
};

struct DenoiseConfig {
  std::string input;
  std::vector<double> sigmas{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
  double bilateral_sigma_s = 2.0;
  double bilateral_sigma_r = 1.0;
  std::size_t bilateral_window = 26;
};

struct FomSweepConfig {
  std::vector<double> laser_powers_w{0.01, 0.05, 0.1, 0.2, 0.5};
  std::vector<double> mw_powers_w{dbm_to_watts(10), dbm_to_watts(20), dbm_to_watts(30)};
  FomOptions options;
};

/// Fully resolved run configuration. Fields are SI; the file accepts the
/// units named in each key (see README).
struct RunConfig {
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  unsigned threads = 1;

  FieldVector field_t = FieldVector::Zero();
  /// Linear field gradients for wide-field maps, T per m along x and y.
  FieldVector gradient_x_t_per_m = FieldVector::Zero();
  FieldVector gradient_y_t_per_m = FieldVector::Zero();
  FieldVector bias_t = FieldVector::Zero();

  ApparatusConfig apparatus;
  NoiseConfig noise;
  SweepGrid sweep;
  GridGeometry grid;
  ReconstructConfig reconstruct;
  DenoiseConfig denoise;
  FomSweepConfig fom;

  /// Unknown field (without bias) at a pixel position.
  FieldVector field_at(double x_m, double y_m) const {
    return field_t + x_m * gradient_x_t_per_m + y_m * gradient_y_t_per_m;
  }
};

/// Parses an INI file. Unknown sections or keys, malformed values and out
/// of range values raise ConfigError naming the key and the constraint.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_string(const std::string& text);

/// Checks cross-field constraints on an assembled config.
void validate(const RunConfig& config);

/// Snapshot of the resolved config for provenance.
nlohmann::json config_to_json(const RunConfig& config);

}  // namespace nvodmr
