#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nvodmr/peaks.hpp"
#include "nvodmr/spectrum.hpp"

namespace nvodmr {

struct FomPoint {
  double laser_power_w = 0.0;
  double mw_power_w = 0.0;
  /// Fitted dip amplitude.
  double contrast = 0.0;
  /// Fitted FWHM, Hz.
  double linewidth_hz = 0.0;
  /// contrast / linewidth, per Hz.
  double fom = 0.0;
};

struct FomOptions {
  /// Index of the dip in ascending frequency order; unset picks the deepest.
  std::optional<std::size_t> target_dip;
  /// Detection threshold as a fraction of the spectrum's maximum contrast.
  double relative_prominence = 0.1;
  /// Seeds averaged per cell (consecutive from noise.seed). Only matters when
  /// noise is enabled.
  std::size_t seeds = 1;
};

/// Simulates with the apparatus as given and fits the chosen dip. Throws
/// FitError when no usable dip is found.
FomPoint evaluate_fom(const FieldVector& b_lab, const ApparatusConfig& apparatus,
                      const NoiseConfig& noise, const SweepGrid& sweep, const FomOptions& options = {});

struct FomHeatmap {
  std::vector<double> laser_powers_w;
  std::vector<double> mw_powers_w;
  /// Row-major [laser][mw]; unset cells failed and carry a message in `errors`.
  std::vector<std::optional<FomPoint>> cells;
  std::vector<std::string> errors;

  const std::optional<FomPoint>& at(std::size_t il, std::size_t im) const {
    return cells[il * mw_powers_w.size() + im];
  }
  std::size_t failures() const;
  /// Cell with the largest FOM, as (laser index, mw index).
  std::optional<std::pair<std::size_t, std::size_t>> argmax() const;
};

FomHeatmap sweep_fom(const std::vector<double>& laser_powers_w, const std::vector<double>& mw_powers_w,
                     const FieldVector& b_lab, const ApparatusConfig& apparatus,
                     const NoiseConfig& noise, const SweepGrid& sweep,
                     const FomOptions& options = {}, unsigned threads = 1);

}  // namespace nvodmr
