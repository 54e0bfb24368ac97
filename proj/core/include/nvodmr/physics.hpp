#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Dense>

#include "nvodmr/constants.hpp"

namespace nvodmr {

/// Static or oscillating magnetic field in Tesla, lab or NV frame.
using FieldVector = Eigen::Vector3d;
using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;

/// Spin-1 operators in the S_z eigenbasis ordered (m_s = +1, 0, -1).
struct SpinOperators {
  Matrix3c sx;
  Matrix3c sy;
  Matrix3c sz;
};

const SpinOperators& spin_operators();

/// Ground-triplet state labels. Label |1> is m_s = 0, |2> is m_s = -1 and
/// |3> is m_s = +1; the enum value is the zero-based label index.
enum class SpinLabel : std::size_t { kZero = 0, kMinus = 1, kPlus = 2 };

/// Row of the S_z basis vector that carries a given label.
constexpr std::size_t basis_row(SpinLabel label) {
  switch (label) {
    case SpinLabel::kZero: return 1;
    case SpinLabel::kMinus: return 2;
    case SpinLabel::kPlus: return 0;
  }
  return 1;
}

/// h*D*Sz^2 + mu_B*g*(B . S) in Joules. `b_nv` is in the NV frame.
Matrix3c ground_hamiltonian(const FieldVector& b_nv, double zfs_hz,
                            double g = constants::kGFactor);

/// Excited-triplet Hamiltonian: the ground form with D_es substituted.
Matrix3c excited_hamiltonian(const FieldVector& b_nv, double g = constants::kGFactor);

/// Labeled eigen-decomposition of a 3x3 spin Hamiltonian.
///
/// Energies are in Hz and shifted so the minimum is exactly zero; the
/// subtracted value is kept in `offset_hz`. Eigenvectors are assigned to
/// labels by their largest squared overlap with the zero-field basis. When two
/// eigenvectors prefer the same basis state (degenerate mixing), the
/// assignment that maximizes total overlap wins and remaining ties go to the
/// lower eigenvalue first; `label_tie` records that this happened. Each vector
/// is phased so its largest-magnitude component is real and positive.
struct EigenSystem {
  std::array<double, 3> energies_hz{};
  std::array<Vector3c, 3> vectors{};
  double offset_hz = 0.0;
  bool label_tie = false;

  double energy(SpinLabel label) const {
    return energies_hz[static_cast<std::size_t>(label)];
  }
  const Vector3c& vector(SpinLabel label) const {
    return vectors[static_cast<std::size_t>(label)];
  }
  /// Transition frequency from |1> to `label`, Hz.
  double transition_hz(SpinLabel label) const {
    return energy(label) - energy(SpinLabel::kZero);
  }
};

EigenSystem eigensystem(const Matrix3c& hamiltonian);

/// Bose-Einstein occupation of a phonon mode; zero at T = 0.
double phonon_occupation(double mode_energy_j, double kelvin);

/// Temperature-dependent ground-state zero-field splitting D(T) in Hz.
double zfs_temperature(double kelvin);

/// NV gyromagnetic ratio g*mu_B/h in Hz/T.
constexpr double gamma_nv(double g) {
  return g * constants::kBohrMagneton / constants::kPlanck;
}

}  // namespace nvodmr
