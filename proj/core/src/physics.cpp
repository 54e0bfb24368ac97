#include "nvodmr/physics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nvodmr {

namespace {

SpinOperators make_spin_operators() {
  using C = std::complex<double>;
  const double r = 1.0 / std::sqrt(2.0);
  SpinOperators ops;
  ops.sx << 0, r, 0,
            r, 0, r,
            0, r, 0;
  ops.sy << C(0, 0), C(0, -r), C(0, 0),
            C(0, r), C(0, 0), C(0, -r),
            C(0, 0), C(0, r), C(0, 0);
  ops.sz << 1, 0, 0,
            0, 0, 0,
            0, 0, -1;
  return ops;
}

void fix_phase(Vector3c& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  const double mag = std::abs(v(k));
  if (mag > 0.0) v *= std::conj(v(k)) / mag;
  v(k) = std::complex<double>(std::abs(v(k)), 0.0);
}

}  // namespace

const SpinOperators& spin_operators() {
  static const SpinOperators ops = make_spin_operators();
  return ops;
}

Matrix3c ground_hamiltonian(const FieldVector& b_nv, double zfs_hz, double g) {
  const auto& s = spin_operators();
  const double mug = constants::kBohrMagneton * g;
  Matrix3c h = constants::kPlanck * zfs_hz * (s.sz * s.sz);
  h += mug * (b_nv.x() * s.sx + b_nv.y() * s.sy + b_nv.z() * s.sz);
  return h;
}

Matrix3c excited_hamiltonian(const FieldVector& b_nv, double g) {
  return ground_hamiltonian(b_nv, constants::kZfsExcited, g);
}

EigenSystem eigensystem(const Matrix3c& hamiltonian) {
  const Eigen::SelfAdjointEigenSolver<Matrix3c> solver(hamiltonian);
  const Eigen::Vector3d raw = solver.eigenvalues() / constants::kPlanck;  // ascending
  const Matrix3c& vecs = solver.eigenvectors();

  // overlap(k, label) = |<basis(label)|v_k>|^2
  double overlap[3][3];
  for (int k = 0; k < 3; ++k) {
    for (std::size_t l = 0; l < 3; ++l) {
      overlap[k][l] = std::norm(vecs(static_cast<Eigen::Index>(basis_row(SpinLabel{l})), k));
    }
  }

  std::array<int, 3> preferred{};
  for (int k = 0; k < 3; ++k) {
    preferred[k] = static_cast<int>(std::max_element(overlap[k], overlap[k] + 3) - overlap[k]);
  }
  std::array<int, 3> sorted = preferred;
  std::sort(sorted.begin(), sorted.end());
  const bool unique = sorted[0] == 0 && sorted[1] == 1 && sorted[2] == 2;

  // assignment[k] = label of eigenvector k
  std::array<int, 3> assignment = preferred;
  if (!unique) {
    // Permutations are visited in lexicographic order, so among equal scores
    // the lowest eigenvector keeps the lowest label index.
    std::array<int, 3> perm{0, 1, 2};
    double best = -1.0;
    do {
      const double score = overlap[0][perm[0]] + overlap[1][perm[1]] + overlap[2][perm[2]];
      if (score > best + 1e-12) {
        best = score;
        assignment = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  EigenSystem sys;
  sys.label_tie = !unique;
  sys.offset_hz = raw.minCoeff();
  for (int k = 0; k < 3; ++k) {
    const auto label = static_cast<std::size_t>(assignment[k]);
    sys.energies_hz[label] = raw(k) - sys.offset_hz;
    Vector3c v = vecs.col(k);
    fix_phase(v);
    sys.vectors[label] = v;
  }
  return sys;
}

double phonon_occupation(double mode_energy_j, double kelvin) {
  if (kelvin <= 0.0) return 0.0;
  return 1.0 / std::expm1(mode_energy_j / (constants::kBoltzmann * kelvin));
}

double zfs_temperature(double kelvin) {
  if (kelvin <= 0.0) return constants::kZfsGround;
  return constants::kZfsGround +
         constants::kPhononC1 * phonon_occupation(constants::kPhononDelta1, kelvin) +
         constants::kPhononC2 * phonon_occupation(constants::kPhononDelta2, kelvin);
}

}  // namespace nvodmr
