#include "nvodmr/seven_level.hpp"

#include <cmath>
#include <sstream>

#include "nvodmr/error.hpp"
#include "nvodmr/physics.hpp"

namespace nvodmr {

namespace {

constexpr double kPerturbationLimit = 0.1;
constexpr double kDenominatorGuard = 1e-6;
constexpr double kNegativeTolerance = 1e-12;

// Mixing amplitude mu_B g B_perp / (sqrt(2) (h D -/+ mu_B g B_par)) for one
// triplet; `sign` selects the denominator branch.
double mixing(double zeeman_perp, double zeeman_par, double zfs_energy, double sign,
              const char* manifold) {
  const double denom = zfs_energy - sign * zeeman_par;
  if (std::abs(denom) < kDenominatorGuard * zfs_energy) {
    std::ostringstream msg;
    msg << "alpha_matrix: " << manifold << " mixing denominator |hD "
        << (sign > 0 ? "-" : "+") << " mu g B_par| vanishes (level anti-crossing)";
    throw PerturbationError(msg.str(), zeeman_par / zfs_energy);
  }
  return zeeman_perp / (std::sqrt(2.0) * denom);
}

}  // namespace

RateMatrix ZeroFieldRates::matrix() const {
  RateMatrix k = RateMatrix::Zero();
  k(3, 0) = radiative;
  k(4, 1) = radiative;
  k(5, 2) = radiative;
  k(3, 6) = k47;
  k(4, 6) = k57;
  k(5, 6) = k57;
  k(6, 0) = k71;
  k(6, 1) = k72;
  k(6, 2) = k72;
  return k;
}

AlphaMatrix alpha_matrix(double b_par, double b_perp, double g, double zfs_ground_hz,
                         double zfs_excited_hz) {
  const double mug = constants::kBohrMagneton * g;
  const double zeeman_perp = mug * std::abs(b_perp);
  const double zeeman_par = mug * b_par;
  const double hd_gs = constants::kPlanck * zfs_ground_hz;
  const double hd_es = constants::kPlanck * zfs_excited_hz;

  const double ratio = zeeman_perp / hd_gs;
  if (ratio >= kPerturbationLimit) {
    std::ostringstream msg;
    msg << "alpha_matrix: transverse field outside perturbative regime, "
        << "mu g B_perp / (h D_gs) = " << ratio << " >= " << kPerturbationLimit;
    throw PerturbationError(msg.str(), ratio);
  }

  AlphaMatrix a = AlphaMatrix::Identity();
  const double a12 = mixing(zeeman_perp, zeeman_par, hd_gs, +1.0, "ground");
  const double a13 = mixing(zeeman_perp, zeeman_par, hd_gs, -1.0, "ground");
  const double a45 = mixing(zeeman_perp, zeeman_par, hd_es, +1.0, "excited");
  const double a46 = mixing(zeeman_perp, zeeman_par, hd_es, -1.0, "excited");

  a(0, 1) = a12;
  a(0, 2) = a13;
  a(1, 0) = -a12;
  a(2, 0) = -a13;
  a(3, 4) = a45;
  a(3, 5) = a46;
  a(4, 3) = -a45;
  a(5, 3) = -a46;
  return a;
}

double peak_intensity(double laser_power_w, double beam_waist_m) {
  if (beam_waist_m <= 0.0) throw InvalidArgument("peak_intensity: beam waist must be > 0");
  return 2.0 * laser_power_w / (constants::kPi * beam_waist_m * beam_waist_m);
}

double beta_factor(double laser_power_w, double cross_section_m2, double beam_waist_m,
                   double direction_factor, double radiative_rate) {
  if (laser_power_w < 0.0 || cross_section_m2 <= 0.0 || direction_factor <= 0.0 ||
      radiative_rate <= 0.0) {
    throw InvalidArgument("beta_factor: inputs must be positive");
  }
  const double photon_energy =
      constants::kPlanck * constants::kSpeedOfLight / constants::kLaserWavelength;
  const double intensity = peak_intensity(laser_power_w, beam_waist_m);
  return cross_section_m2 * intensity / (direction_factor * radiative_rate * photon_energy);
}

RateMatrix pumped_rates(const ZeroFieldRates& k0, double beta) {
  if (!(beta >= 0.0)) throw InvalidArgument("pumped_rates: beta must be >= 0");
  RateMatrix k = k0.matrix();
  for (int g = 0; g < 3; ++g) k(g, g + 3) = beta * k(g + 3, g);
  return k;
}

RateMatrix mixed_rates(const AlphaMatrix& alpha, const ZeroFieldRates& k0, double beta) {
  const AlphaMatrix weights = alpha.cwiseAbs2();
  return weights * pumped_rates(k0, beta) * weights.transpose();
}

Eigen::Matrix<double, kLevels, kLevels> rate_generator(const RateMatrix& k) {
  Eigen::Matrix<double, kLevels, kLevels> gen = k.transpose();
  for (int i = 0; i < kLevels; ++i) {
    gen(i, i) = -(k.row(i).sum() - k(i, i));
  }
  return gen;
}

RateMatrix with_microwave(RateMatrix kprime, double t12, double t13) {
  kprime(0, 1) += t12;
  kprime(1, 0) += t12;
  kprime(0, 2) += t13;
  kprime(2, 0) += t13;
  return kprime;
}

Populations steady_state(const RateMatrix& kprime, double t12, double t13) {
  if (!(t12 >= 0.0) || !(t13 >= 0.0)) {
    throw InvalidArgument("steady_state: microwave rates must be >= 0");
  }
  const RateMatrix k = with_microwave(kprime, t12, t13);
  if (!k.allFinite() || k.minCoeff() < 0.0) {
    throw InvalidArgument("steady_state: rate matrix entries must be finite and >= 0");
  }
  const double scale = k.maxCoeff();
  if (scale <= 0.0) throw SolveError("steady_state: all transition rates are zero");

  // Balance rows scaled to O(1) so they share a pivot scale with the
  // normalization row.
  Eigen::Matrix<double, kLevels, kLevels> m = rate_generator(k) / scale;
  m.row(kLevels - 1).setOnes();
  PopulationVector rhs = PopulationVector::Zero();
  rhs(kLevels - 1) = 1.0;

  PopulationVector x;
  const Eigen::FullPivLU<Eigen::Matrix<double, kLevels, kLevels>> lu(m);
  if (lu.isInvertible()) {
    x = lu.solve(rhs);
  } else {
    // Disconnected rate graph: minimum-norm steady state when one exists.
    x = m.completeOrthogonalDecomposition().solve(rhs);
    if ((m * x - rhs).norm() > 1e-9) {
      throw SolveError("steady_state: singular rate system has no normalized steady state");
    }
  }

  if (x.minCoeff() < -kNegativeTolerance) {
    std::ostringstream msg;
    msg << "steady_state: negative population " << x.minCoeff()
        << " (rate model inconsistent)";
    throw SolveError(msg.str());
  }
  x = x.cwiseMax(0.0);
  x /= x.sum();
  return Populations{x};
}

double pl_rate(const Populations& pop, const RateMatrix& kprime, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("pl_rate: eta must be in (0, 1]");
  double rate = 0.0;
  for (int i = 3; i < 6; ++i) {
    for (int j = 0; j < 3; ++j) rate += pop.n(i) * kprime(i, j);
  }
  return eta * rate;
}

}  // namespace nvodmr
