#include "nvodmr/microwave.hpp"

#include "nvodmr/error.hpp"

namespace nvodmr {

Matrix3c interaction_hamiltonian(const FieldVector& b_mw_nv, double g) {
  const auto& s = spin_operators();
  return constants::kBohrMagneton * g *
         (b_mw_nv.x() * s.sx + b_mw_nv.y() * s.sy + b_mw_nv.z() * s.sz);
}

TransitionStrengths transition_strengths(const EigenSystem& eig, const Matrix3c& h_int) {
  const Vector3c& v1 = eig.vector(SpinLabel::kZero);
  const Vector3c coupled = h_int * v1;
  return {std::norm(eig.vector(SpinLabel::kMinus).dot(coupled)),
          std::norm(eig.vector(SpinLabel::kPlus).dot(coupled))};
}

double lorentzian_dos(double nu_hz, double center_hz, double fwhm_hz) {
  if (!(fwhm_hz > 0.0)) throw InvalidArgument("lorentzian_dos: linewidth must be > 0");
  const double half = 0.5 * fwhm_hz;
  const double d = nu_hz - center_hz;
  return half / (d * d + half * half);
}

double mw_transition_rate(double t_raw_j2, double rho_per_hz, double calibration) {
  if (t_raw_j2 < 0.0 || rho_per_hz < 0.0 || calibration < 0.0) {
    throw InvalidArgument("mw_transition_rate: inputs must be >= 0");
  }
  return (2.0 * constants::kPi / constants::kHbar) * t_raw_j2 * (rho_per_hz / constants::kPlanck) *
         calibration;
}

Saturation saturation(double laser_power_w, double cross_section_m2, double beam_waist_m,
                      double saturation_pump_rate_hz) {
  if (laser_power_w < 0.0 || cross_section_m2 <= 0.0 || beam_waist_m <= 0.0 ||
      saturation_pump_rate_hz <= 0.0) {
    throw InvalidArgument("saturation: inputs must be positive");
  }
  Saturation out;
  out.intensity_w_m2 = saturation_pump_rate_hz * constants::kSpeedOfLight * constants::kPlanck /
                       (cross_section_m2 * constants::kLaserWavelength);
  out.power_w = 0.5 * constants::kPi * beam_waist_m * beam_waist_m * out.intensity_w_m2;
  out.s = laser_power_w / out.power_w;
  return out;
}

double rabi_frequency(double b_mw_t, double g) {
  if (b_mw_t < 0.0) throw InvalidArgument("rabi_frequency: B_mw must be >= 0");
  return gamma_nv(g) * b_mw_t;
}

double linewidth(double s, double rabi_hz, const LinewidthParams& params, double floor_hz) {
  if (s < 0.0 || rabi_hz < 0.0) throw InvalidArgument("linewidth: s and Omega_R must be >= 0");
  if (s == 0.0 && rabi_hz == 0.0) return floor_hz;
  const double optical = s / (1.0 + s);
  const double mw = rabi_hz * rabi_hz / (params.gamma_p_inf_hz * params.gamma_c_inf_hz);
  return params.gamma_c_inf_hz / (2.0 * constants::kPi) * std::sqrt(optical * optical + mw);
}

}  // namespace nvodmr
