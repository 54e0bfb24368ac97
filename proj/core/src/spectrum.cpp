#include "nvodmr/spectrum.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "nvodmr/error.hpp"
#include "nvodmr/io.hpp"

namespace nvodmr {

namespace {

// Static-field dependent pieces of one branch: labeled eigensystem and the
// mixing matrix.
struct FieldState {
  EigenSystem eig;
  AlphaMatrix alpha;
};

FieldState field_state(const FieldVector& b_nv, double zfs_hz, double g) {
  return {eigensystem(ground_hamiltonian(b_nv, zfs_hz, g)),
          alpha_matrix(b_nv.z(), std::hypot(b_nv.x(), b_nv.y()), g, zfs_hz,
                       constants::kZfsExcited)};
}

std::string context(std::size_t orientation, std::size_t k, bool in_sweep) {
  std::ostringstream out;
  out << "simulate_spectrum (orientation " << orientation;
  if (in_sweep) {
    out << ", frequency index " << k;
  } else {
    out << ", baseline";
  }
  out << "): ";
  return out.str();
}

[[noreturn]] void rethrow_with_context(const std::string& where) {
  try {
    throw;
  } catch (const PerturbationError& e) {
    throw PerturbationError(where + e.what(), e.ratio());
  } catch (const SolveError& e) {
    throw SolveError(where + e.what());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(where + e.what());
  }
}

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError(field, "must be finite and > 0");
}

void require_nonnegative(double value, const char* field) {
  if (!(value >= 0.0) || !std::isfinite(value)) throw ConfigError(field, "must be finite and >= 0");
}

}  // namespace

std::vector<double> SweepGrid::frequencies() const {
  validate();
  std::vector<double> f(n_freq);
  const double step = step_hz();
  for (std::size_t k = 0; k < n_freq; ++k) f[k] = f_start_hz + step * static_cast<double>(k);
  f.back() = f_end_hz;
  return f;
}

void SweepGrid::validate() const {
  if (n_freq < 2) throw ConfigError("sweep.n_freq", "must be >= 2");
  if (!std::isfinite(f_start_hz) || !std::isfinite(f_end_hz) || !(f_start_hz < f_end_hz)) {
    throw ConfigError("sweep.f_start", "must be finite and below sweep.f_end");
  }
  if (f_start_hz <= 0.0) throw ConfigError("sweep.f_start", "must be > 0");
}

void ApparatusConfig::validate() const {
  require_nonnegative(laser_power_w, "apparatus.laser_power");
  require_positive(beam_waist_m, "apparatus.beam_waist");
  require_positive(cross_section_m2, "apparatus.cross_section");
  if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("apparatus.eta", "must be in (0, 1]");
  require_nonnegative(temperature_k, "apparatus.temperature");
  require_nonnegative(mw_power_w, "apparatus.mw_power");
  require_nonnegative(antenna_t_per_sqrt_w, "apparatus.antenna_constant");
  require_nonnegative(rate_calibration, "apparatus.rate_calibration");
  require_positive(linewidth.gamma_c_inf_hz, "apparatus.gamma_c_inf");
  require_positive(linewidth.gamma_p_inf_hz, "apparatus.gamma_p_inf");
  require_positive(linewidth.saturation_pump_rate_hz, "apparatus.saturation_pump_rate");
  try {
    (void)normalized(weights);
  } catch (const InvalidArgument& e) {
    throw ConfigError("apparatus.weights", e.what());
  }
}

Spectrum simulate_spectrum(const FieldVector& b_lab, const ApparatusConfig& apparatus,
                           const NoiseConfig& noise, const SweepGrid& sweep, std::uint64_t pixel) {
  apparatus.validate();
  noise.validate();
  const std::vector<double> freqs = sweep.frequencies();
  const std::size_t n = freqs.size();
  const OrientationWeights weights = normalized(apparatus.weights);

  RandomSource spectrum_rng = RandomSource::derive(noise.seed, StreamTag::kSpectrum, {pixel});
  const double g = noise.g_spread ? sample_g(noise.g_std, noise.g_distribution, spectrum_rng)
                                  : constants::kGFactor;
  const double t2_star = noise.t2_star_spread
                             ? sample_t2_star(noise.t2_star_s, noise.t2_star_std_s, spectrum_rng)
                             : noise.t2_star_s;
  FieldVector b_total = b_lab;
  if (noise.surface_field) b_total += surface_field(noise.surface_field_std_t, spectrum_rng);

  const double width_floor = 1.0 / (constants::kPi * t2_star);
  const double p_laser = apparatus.laser_power_w;
  const double p_mw = apparatus.mw_power_w;
  const FieldVector mw_direction = apparatus.mw_drive().lab_field(1.0);
  const double p_sat = saturation(p_laser, apparatus.cross_section_m2, apparatus.beam_waist_m,
                                  apparatus.linewidth.saturation_pump_rate_hz)
                           .power_w;
  const double beta0 =
      beta_factor(p_laser, apparatus.cross_section_m2, apparatus.beam_waist_m);
  const double base_zfs = zfs_temperature(apparatus.temperature_k);
  const bool per_point_field = noise.temperature_drift || noise.mw_phase;

  std::array<double, kOrientations> pl0{};
  Eigen::Matrix<double, kOrientations, Eigen::Dynamic> pl =
      Eigen::Matrix<double, kOrientations, Eigen::Dynamic>::Zero(kOrientations,
                                                                 static_cast<Eigen::Index>(n));

  for (std::size_t o = 0; o < kOrientations; ++o) {
    if (weights[o] == 0.0) continue;
    const FieldVector b_nv = orientation_frame(b_total, o);
    const FieldVector mw_nv = orientation_frame(mw_direction, o);
    RandomSource branch_rng = RandomSource::derive(noise.seed, StreamTag::kBranch, {pixel, o});
    const double sigma = noise.dephasing ? dephasing_shift(t2_star, branch_rng) : 0.0;
    const double zfs = base_zfs + sigma;

    FieldState nominal;
    RateMatrix k_nominal;
    try {
      nominal = field_state(b_nv, zfs, g);
      k_nominal = mixed_rates(nominal.alpha, apparatus.rates, beta0);
      pl0[o] = pl_rate(steady_state(k_nominal), k_nominal, apparatus.eta);
    } catch (const Error&) {
      rethrow_with_context(context(o, 0, false));
    }

    for (std::size_t k = 0; k < n; ++k) {
      try {
        RandomSource rng = RandomSource::derive(noise.seed, StreamTag::kPoint, {pixel, o, k});
        const double p_laser_k =
            noise.laser_power
                ? sample_gaussian_power(p_laser, noise.laser_power_rel_std * p_laser, rng)
                : p_laser;
        const double p_mw_k =
            noise.mw_power ? sample_gaussian_power(p_mw, noise.mw_power_rel_std * p_mw, rng) : p_mw;
        const double nu =
            noise.mw_freq_jitter ? mw_freq_jitter(freqs[k], noise.mw_freq_jitter_std_hz, rng)
                                 : freqs[k];

        const FieldState* state = &nominal;
        FieldState local;
        if (per_point_field) {
          const double zfs_k =
              noise.temperature_drift
                  ? zfs_temperature(drifting_temperature(k, n, noise.drift_start_k,
                                                         noise.drift_end_k)) +
                        sigma
                  : zfs;
          FieldVector b_k = b_nv;
          if (noise.mw_phase) b_k.z() += mw_phase_as_field(noise.mw_phase_field_std_t, rng);
          local = field_state(b_k, zfs_k, g);
          state = &local;
        }

        const bool reuse_rates = !per_point_field && p_laser_k == p_laser;
        const RateMatrix kprime =
            reuse_rates ? k_nominal
                        : mixed_rates(state->alpha, apparatus.rates,
                                      beta_factor(p_laser_k, apparatus.cross_section_m2,
                                                  apparatus.beam_waist_m));

        const double b_mw = apparatus.antenna_t_per_sqrt_w * std::sqrt(p_mw_k);
        const double width = linewidth(p_laser_k / p_sat, rabi_frequency(b_mw, g),
                                       apparatus.linewidth, width_floor);
        const TransitionStrengths ts =
            transition_strengths(state->eig, interaction_hamiltonian(b_mw * mw_nv, g));
        const double t12 = mw_transition_rate(
            ts.t12_raw,
            lorentzian_dos(nu, state->eig.transition_hz(SpinLabel::kMinus), width),
            apparatus.rate_calibration);
        const double t13 = mw_transition_rate(
            ts.t13_raw,
            lorentzian_dos(nu, state->eig.transition_hz(SpinLabel::kPlus), width),
            apparatus.rate_calibration);

        pl(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(k)) =
            pl_rate(steady_state(kprime, t12, t13), kprime, apparatus.eta);
      } catch (const Error&) {
        rethrow_with_context(context(o, k, true));
      }
    }
  }

  Spectrum out;
  out.freqs_hz = freqs;
  if (noise.shot_noise) {
    // Eight equal sub-populations each contribute one emitter's count, so
    // weights enter as 8 w_o.
    const double dt = noise.integration_time_s;
    double baseline_counts = 0.0;
    for (std::size_t o = 0; o < kOrientations; ++o) {
      baseline_counts += static_cast<double>(kOrientations) * weights[o] * pl0[o] * dt;
    }
    if (noise.shot_noise_baseline) {
      RandomSource rng = RandomSource::derive(noise.seed, StreamTag::kBaselineShot, {pixel});
      baseline_counts = static_cast<double>(shot_noise(baseline_counts, rng));
    }
    if (!(baseline_counts > 0.0)) throw SolveError("simulate_spectrum: zero baseline photon count");

    out.contrast.resize(n);
    out.photon_counts.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      double mean = 0.0;
      for (std::size_t o = 0; o < kOrientations; ++o) {
        mean += static_cast<double>(kOrientations) * weights[o] *
                pl(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(k)) * dt;
      }
      RandomSource rng = RandomSource::derive(noise.seed, StreamTag::kShot, {pixel, k});
      const std::int64_t counts = shot_noise(mean, rng);
      out.photon_counts[k] = counts;
      out.contrast[k] = (baseline_counts - static_cast<double>(counts)) / baseline_counts;
    }
  } else {
    out.contrast = ensemble_contrast(pl0, pl, weights);
  }

  out.metadata = {
      {"b_lab_t", {b_lab.x(), b_lab.y(), b_lab.z()}},
      {"apparatus", apparatus},
      {"noise", noise},
      {"sweep", sweep},
      {"seed", noise.seed},
      {"pixel", pixel},
  };
  return out;
}

double snr_db(const std::vector<double>& noisy, const std::vector<double>& reference) {
  if (noisy.size() != reference.size() || noisy.empty()) {
    throw InvalidArgument("snr_db: arrays must be non-empty and of equal length");
  }
  double signal = 0.0;
  double residual = 0.0;
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    signal += reference[i] * reference[i];
    const double d = noisy[i] - reference[i];
    residual += d * d;
  }
  if (residual == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal / residual);
}

double snr_of_spectrum(const Spectrum& noisy, const Spectrum& reference) {
  if (noisy.freqs_hz != reference.freqs_hz) {
    throw InvalidArgument("snr_of_spectrum: spectra are on different frequency grids");
  }
  return snr_db(noisy.contrast, reference.contrast);
}

}  // namespace nvodmr
