#pragma once

#include <algorithm>
#include <cmath>

#include "nvodmr/constants.hpp"
#include "nvodmr/physics.hpp"

namespace nvodmr {

/// Antenna constant giving a Rabi frequency of 1 MHz at 1 W, T/sqrt(W).
inline constexpr double kDefaultAntennaConstant = 1e6 / gamma_nv(constants::kGFactor);

/// Dimensionless scale applied to the golden-rule rate. With 1/(4 pi) the
/// on-resonance rate for a transverse drive at zero field is
/// (2 pi Omega_R)^2 / (2 * 2 pi * dnu): the incoherent limit of a coherent
/// drive with angular Rabi frequency 2 pi Omega_R and coherence decay pi * dnu.
inline constexpr double kDefaultRateCalibration = 1.0 / (4.0 * constants::kPi);

/// Microwave drive: nominal power, antenna conversion, and propagation
/// direction (polar/azimuthal, lab frame).
struct MwDrive {
  double power_w = 0.1;
  double antenna_t_per_sqrt_w = kDefaultAntennaConstant;
  double theta_rad = 0.0;
  double phi_rad = 0.0;

  /// B_mw = k_ant * sqrt(P).
  double amplitude_t() const { return antenna_t_per_sqrt_w * std::sqrt(std::max(power_w, 0.0)); }
  /// Lab-frame field vector for a given amplitude.
  FieldVector lab_field(double amplitude_t) const {
    return amplitude_t * FieldVector(std::sin(theta_rad) * std::cos(phi_rad),
                                     std::sin(theta_rad) * std::sin(phi_rad),
                                     std::cos(theta_rad));
  }
};

struct LinewidthParams {
  double gamma_c_inf_hz = constants::kGammaCInf;
  double gamma_p_inf_hz = constants::kGammaPInf;
  double saturation_pump_rate_hz = constants::kSaturationPumpRate;
};

/// mu_B g (B_mw . S) in Joules; `b_mw_nv` in the NV frame.
Matrix3c interaction_hamiltonian(const FieldVector& b_mw_nv, double g = constants::kGFactor);

/// Squared matrix elements |<2|H_int|1>|^2 and |<3|H_int|1>|^2 in J^2.
struct TransitionStrengths {
  double t12_raw = 0.0;
  double t13_raw = 0.0;
};

TransitionStrengths transition_strengths(const EigenSystem& eig, const Matrix3c& h_int);

/// Frequency-domain Lorentzian density (dnu/2)/((nu-nu_f)^2 + (dnu/2)^2);
/// peak 2/dnu, integral pi.
double lorentzian_dos(double nu_hz, double center_hz, double fwhm_hz);

/// Golden-rule rate (2 pi / hbar) * t_raw * (rho / h) * cal in Hz.
double mw_transition_rate(double t_raw_j2, double rho_per_hz,
                          double calibration = kDefaultRateCalibration);

struct Saturation {
  double s = 0.0;
  double power_w = 0.0;        // P_sat
  double intensity_w_m2 = 0.0;  // I_sat
};

/// I_sat = W_p^sat c h / (sigma lambda), P_sat = (pi w0^2 / 2) I_sat, s = P / P_sat.
Saturation saturation(double laser_power_w, double cross_section_m2, double beam_waist_m,
                      double saturation_pump_rate_hz = constants::kSaturationPumpRate);

/// Omega_R = mu_B g B_mw / h in Hz.
double rabi_frequency(double b_mw_t, double g = constants::kGFactor);

/// Power-broadened FWHM (Gamma_c/2pi) sqrt((s/(1+s))^2 + Omega_R^2/(Gamma_p Gamma_c)).
/// Returns `floor_hz` when both s and Omega_R are zero.
double linewidth(double s, double rabi_hz, const LinewidthParams& params, double floor_hz);

}  // namespace nvodmr
