#include "nvodmr/optimize.hpp"

#include <algorithm>
#include <sstream>

#include "nvodmr/error.hpp"
#include "nvodmr/widefield.hpp"

namespace nvodmr {

namespace {

FomPoint fit_target(const Spectrum& spectrum, const FomOptions& options) {
  const double peak = *std::max_element(spectrum.contrast.begin(), spectrum.contrast.end());
  if (!(peak > 0.0)) throw FitError("evaluate_fom: spectrum has no positive contrast");
  PeakSearchOptions search;
  search.prominence = options.relative_prominence * peak;
  const std::vector<PeakFit> fits = detect_and_fit(spectrum.freqs_hz, spectrum.contrast, search);
  if (fits.empty()) throw FitError("evaluate_fom: no resonance above the prominence threshold");

  std::size_t pick = 0;
  if (options.target_dip) {
    if (*options.target_dip >= fits.size()) {
      std::ostringstream msg;
      msg << "evaluate_fom: target dip " << *options.target_dip << " requested but only "
          << fits.size() << " found";
      throw FitError(msg.str());
    }
    pick = *options.target_dip;
  } else {
    for (std::size_t i = 1; i < fits.size(); ++i) {
      if (fits[i].fit.params.amplitude > fits[pick].fit.params.amplitude) pick = i;
    }
  }
  const LorentzianFit& fit = fits[pick].fit;
  if (!(fit.params.gamma > 0.0)) throw FitError("evaluate_fom: fitted linewidth is not positive");

  FomPoint p;
  p.contrast = fit.params.amplitude;
  p.linewidth_hz = fit.fwhm();
  return p;
}

}  // namespace

FomPoint evaluate_fom(const FieldVector& b_lab, const ApparatusConfig& apparatus,
                      const NoiseConfig& noise, const SweepGrid& sweep, const FomOptions& options) {
  const std::size_t runs = noise.any_enabled() ? std::max<std::size_t>(options.seeds, 1) : 1;
  double contrast = 0.0;
  double width = 0.0;
  for (std::size_t s = 0; s < runs; ++s) {
    NoiseConfig local = noise;
    local.seed = noise.seed + s;
    const FomPoint p = fit_target(simulate_spectrum(b_lab, apparatus, local, sweep), options);
    contrast += p.contrast;
    width += p.linewidth_hz;
  }
  FomPoint out;
  out.laser_power_w = apparatus.laser_power_w;
  out.mw_power_w = apparatus.mw_power_w;
  out.contrast = contrast / static_cast<double>(runs);
  out.linewidth_hz = width / static_cast<double>(runs);
  out.fom = out.contrast / out.linewidth_hz;
  return out;
}

std::size_t FomHeatmap::failures() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const auto& c) { return !c.has_value(); }));
}

std::optional<std::pair<std::size_t, std::size_t>> FomHeatmap::argmax() const {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  double best_fom = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i]) continue;
    if (!best || cells[i]->fom > best_fom) {
      best_fom = cells[i]->fom;
      best = std::make_pair(i / mw_powers_w.size(), i % mw_powers_w.size());
    }
  }
  return best;
}

FomHeatmap sweep_fom(const std::vector<double>& laser_powers_w, const std::vector<double>& mw_powers_w,
                     const FieldVector& b_lab, const ApparatusConfig& apparatus,
                     const NoiseConfig& noise, const SweepGrid& sweep, const FomOptions& options,
                     unsigned threads) {
  if (laser_powers_w.empty() || mw_powers_w.empty()) {
    throw InvalidArgument("sweep_fom: power grids must be non-empty");
  }
  FomHeatmap map;
  map.laser_powers_w = laser_powers_w;
  map.mw_powers_w = mw_powers_w;
  const std::size_t cells = laser_powers_w.size() * mw_powers_w.size();
  map.cells.resize(cells);
  map.errors.resize(cells);

  parallel_for(cells, threads, [&](std::size_t idx) {
    ApparatusConfig local = apparatus;
    local.laser_power_w = laser_powers_w[idx / mw_powers_w.size()];
    local.mw_power_w = mw_powers_w[idx % mw_powers_w.size()];
    try {
      map.cells[idx] = evaluate_fom(b_lab, local, noise, sweep, options);
    } catch (const std::exception& e) {
      map.errors[idx] = e.what();
    }
  });
  return map;
}

}  // namespace nvodmr
