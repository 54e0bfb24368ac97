#pragma once

#include <array>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "nvodmr/ensemble.hpp"
#include "nvodmr/physics.hpp"

namespace nvodmr {

/// Row order of the least-squares system. kPrinted stacks the axes as
/// (n1, n2, n4, n3) with the matching (B1, B2, B4, B3) right-hand side;
/// kNatural uses (n1, n2, n3, n4). Both give the same solution.
enum class AxisOrder { kPrinted, kNatural };

struct AxisMatrix {
  Eigen::Matrix<double, 4, 3> n;
  /// Axis index (0-based) stored in each row.
  std::array<std::size_t, 4> row_axis{};

  static AxisMatrix make(AxisOrder order);
};

/// Which crystal axis each sorted resonance pair belongs to, and the sign of
/// the total field's projection on it. Pair k is (f_k, f_{7-k}) after sorting,
/// so pair 0 is the outermost.
struct PairAssignment {
  std::array<std::size_t, 4> pair_axis{0, 1, 2, 3};
  std::array<int, 4> signs{1, 1, 1, 1};
};

/// Assignment implied by a known bias: axes ordered by decreasing |n_i . B|,
/// signs from sign(n_i . B). Exact for the outermost-with-outermost pairing
/// whenever the bias projections dominate the unknown field's.
PairAssignment calibrate_bias(const FieldVector& b_bias);

struct ReconstructionResult {
  FieldVector b_actual = FieldVector::Zero();
  FieldVector b_measured = FieldVector::Zero();
  FieldVector b_bias = FieldVector::Zero();
  /// Signed projections on axes 1..4 (natural order), Tesla.
  std::array<double, 4> projections{};
  std::array<double, 8> dip_centers_hz{};
  /// N B - b for each axis (natural order), Tesla.
  std::array<double, 4> residuals{};
};

/// Projections b_i = sign * (f_+ - f_-) / (2 gamma) followed by the
/// least-squares solve N B = b and bias subtraction. Throws InvalidArgument
/// unless the centers are sorted with positive pair splittings.
ReconstructionResult reconstruct_field(std::span<const double, 8> centers_hz,
                                       const PairAssignment& assignment, const FieldVector& b_bias,
                                       double gamma_hz_per_t,
                                       AxisOrder order = AxisOrder::kPrinted);

}  // namespace nvodmr
