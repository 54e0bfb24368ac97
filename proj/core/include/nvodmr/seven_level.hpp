#pragma once

#include <Eigen/Dense>

#include "nvodmr/constants.hpp"

namespace nvodmr {

// Seven-level NV model. Levels are indexed 0..6 for |1>..|7>:
//   0,1,2  ground   m_s = 0, -1, +1
//   3,4,5  excited  m_s = 0, -1, +1
//   6      metastable singlet
// RateMatrix(i, j) is the rate from level i to level j in Hz.
inline constexpr int kLevels = 7;
using RateMatrix = Eigen::Matrix<double, kLevels, kLevels>;
using AlphaMatrix = Eigen::Matrix<double, kLevels, kLevels>;
using PopulationVector = Eigen::Matrix<double, kLevels, 1>;

struct ZeroFieldRates {
  double radiative = constants::kRadiativeRate;
  double k47 = constants::kRate47;
  double k57 = constants::kRate57;
  double k71 = constants::kRate71;
  double k72 = constants::kRate72;

  /// Rate table with k67 = k57, k73 = k72 and every unlisted entry zero.
  RateMatrix matrix() const;
};

/// First-order mixing coefficients for a field with axial part `b_par` and
/// transverse magnitude `b_perp` (Tesla, NV frame).
///
/// Throws PerturbationError when mu_B*g*B_perp / (h*D_gs) >= 0.1, or when a
/// denominator h*D -/+ mu_B*g*B_par comes within 1e-6 of h*D in either triplet.
AlphaMatrix alpha_matrix(double b_par, double b_perp, double g = constants::kGFactor,
                         double zfs_ground_hz = constants::kZfsGround,
                         double zfs_excited_hz = constants::kZfsExcited);

/// Peak intensity 2P/(pi w0^2) of a Gaussian beam, W/m^2.
double peak_intensity(double laser_power_w, double beam_waist_m);

/// Optical pumping factor sigma*I / (f * k_r * h * nu) with f the
/// direction factor (4 by default) and nu = c / 532 nm.
double beta_factor(double laser_power_w, double cross_section_m2, double beam_waist_m,
                   double direction_factor = constants::kPumpingDirectionFactor,
                   double radiative_rate = constants::kRadiativeRate);

/// Zero-field table plus optical pumping k_(g -> e) = beta * k_(e -> g).
RateMatrix pumped_rates(const ZeroFieldRates& k0, double beta);

/// k'_ij = sum_p sum_q |alpha_ip|^2 |alpha_jq|^2 k_pq over the pumped table.
RateMatrix mixed_rates(const AlphaMatrix& alpha, const ZeroFieldRates& k0, double beta);

/// Generator G of dn/dt = G n for a rate matrix (no normalization row).
Eigen::Matrix<double, kLevels, kLevels> rate_generator(const RateMatrix& k);

/// Adds symmetric microwave rates 1<->2 (t12) and 1<->3 (t13).
RateMatrix with_microwave(RateMatrix kprime, double t12, double t13);

struct Populations {
  PopulationVector n = PopulationVector::Zero();

  double operator[](int level) const { return n(level); }
  double sum() const { return n.sum(); }
};

/// Steady state of dn/dt = 0 with the last balance row replaced by
/// sum(n) = 1. Microwave rates are added before solving.
///
/// Throws SolveError if every rate is zero, if the system is inconsistent, or
/// if a population is below -1e-12. Smaller negatives are clamped and the
/// vector renormalized.
Populations steady_state(const RateMatrix& kprime, double t12 = 0.0, double t13 = 0.0);

/// eta * sum_{i in excited} sum_{j in ground} n_i k'_ij, Hz.
double pl_rate(const Populations& pop, const RateMatrix& kprime, double eta);

}  // namespace nvodmr
