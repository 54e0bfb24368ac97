#include "nvodmr/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nvodmr/error.hpp"

namespace nvodmr {

AxisMatrix AxisMatrix::make(AxisOrder order) {
  AxisMatrix m;
  m.row_axis = order == AxisOrder::kPrinted ? std::array<std::size_t, 4>{0, 1, 3, 2}
                                            : std::array<std::size_t, 4>{0, 1, 2, 3};
  const auto& axes = nv_frames().axes;
  for (std::size_t r = 0; r < 4; ++r) {
    m.n.row(static_cast<Eigen::Index>(r)) = axes[m.row_axis[r]].transpose();
  }
  return m;
}

PairAssignment calibrate_bias(const FieldVector& b_bias) {
  const auto& axes = nv_frames().axes;
  std::array<double, 4> proj{};
  for (std::size_t i = 0; i < 4; ++i) proj[i] = axes[i].dot(b_bias);

  PairAssignment a;
  std::iota(a.pair_axis.begin(), a.pair_axis.end(), std::size_t{0});
  std::stable_sort(a.pair_axis.begin(), a.pair_axis.end(), [&](std::size_t l, std::size_t r) {
    return std::abs(proj[l]) > std::abs(proj[r]);
  });
  for (std::size_t k = 0; k < 4; ++k) a.signs[k] = proj[a.pair_axis[k]] < 0.0 ? -1 : 1;
  return a;
}

ReconstructionResult reconstruct_field(std::span<const double, 8> centers_hz,
                                       const PairAssignment& assignment, const FieldVector& b_bias,
                                       double gamma_hz_per_t, AxisOrder order) {
  if (!(gamma_hz_per_t > 0.0)) throw InvalidArgument("reconstruct_field: gamma must be > 0");
  if (!std::is_sorted(centers_hz.begin(), centers_hz.end())) {
    throw InvalidArgument("reconstruct_field: centers must be sorted ascending");
  }
  std::array<bool, 4> seen{};
  for (std::size_t axis : assignment.pair_axis) {
    if (axis >= 4 || seen[axis]) throw InvalidArgument("reconstruct_field: pair_axis must be a permutation");
    seen[axis] = true;
  }

  ReconstructionResult r;
  r.b_bias = b_bias;
  std::copy(centers_hz.begin(), centers_hz.end(), r.dip_centers_hz.begin());
  for (std::size_t k = 0; k < 4; ++k) {
    const double splitting = centers_hz[7 - k] - centers_hz[k];
    if (!(splitting > 0.0)) {
      throw InvalidArgument("reconstruct_field: resonance pair has non-positive splitting");
    }
    const int sign = assignment.signs[k];
    if (sign != 1 && sign != -1) throw InvalidArgument("reconstruct_field: signs must be +1 or -1");
    r.projections[assignment.pair_axis[k]] = sign * splitting / (2.0 * gamma_hz_per_t);
  }

  const AxisMatrix axes = AxisMatrix::make(order);
  Eigen::Vector4d b;
  for (std::size_t row = 0; row < 4; ++row) b(static_cast<Eigen::Index>(row)) = r.projections[axes.row_axis[row]];

  const Eigen::Matrix3d ntn = axes.n.transpose() * axes.n;
  const Eigen::FullPivLU<Eigen::Matrix3d> lu(ntn);
  if (lu.rank() < 3) throw SolveError("reconstruct_field: axis matrix is rank deficient");
  r.b_measured = lu.solve(axes.n.transpose() * b);
  r.b_actual = r.b_measured - b_bias;

  const Eigen::Vector4d res = axes.n * r.b_measured - b;
  for (std::size_t row = 0; row < 4; ++row) r.residuals[axes.row_axis[row]] = res(static_cast<Eigen::Index>(row));
  return r;
}

}  // namespace nvodmr
