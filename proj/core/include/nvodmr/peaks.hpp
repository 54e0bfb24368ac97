#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nvodmr/lorentzian.hpp"
#include "nvodmr/spectrum.hpp"

namespace nvodmr {

struct Peak {
  std::size_t index = 0;
  double height = 0.0;
  double prominence = 0.0;
  /// Width at half prominence in samples, with interpolated edge positions.
  double width = 0.0;
  double left_ips = 0.0;
  double right_ips = 0.0;
};

/// Local maxima whose topographic prominence is at least `min_prominence`.
/// Flat tops report their middle sample. Prominence and width follow the
/// usual definitions: the reference level is the higher of the two minima
/// reached before the signal climbs above the peak on each side.
std::vector<Peak> find_peaks(std::span<const double> y, double min_prominence);

struct PeakFit {
  Peak peak;
  LorentzianFit fit;
  std::size_t window_begin = 0;
  std::size_t window_end = 0;  // exclusive
};

struct PeakSearchOptions {
  double prominence = 1e-3;
  /// Fit window half-size in estimated half-widths.
  double window_half_widths = 3.0;
  /// Normalized PL spectra (baseline 1, resonances are minima) are mapped
  /// to 1 - v first.
  bool invert = false;
};

/// Detects peaks and fits a Lorentzian to each on its own window. Results
/// are sorted by fitted center. Peaks whose fit diverges or whose center
/// leaves the window are dropped.
std::vector<PeakFit> detect_and_fit(std::span<const double> freqs_hz, std::span<const double> values,
                                    const PeakSearchOptions& options);

/// Sorted fitted centers of exactly `expected` resonances; PeakCountError
/// carries the number found otherwise.
std::vector<double> find_and_fit_peaks(const Spectrum& spectrum, const PeakSearchOptions& options,
                                       std::size_t expected = 8);

}  // namespace nvodmr
