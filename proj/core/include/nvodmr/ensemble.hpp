#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nvodmr/physics.hpp"

namespace nvodmr {

inline constexpr std::size_t kAxes = 4;
inline constexpr std::size_t kOrientations = 8;

/// The four crystal axes NV1..NV4 (lab frame) and the rotations taking the
/// lab frame into each NV frame (NV axis -> +z). Two of the printed matrices
/// are improper (det = -1); the spin spectrum only depends on |B_par| and
/// |B_perp|, so this is harmless.
struct NvFrameSet {
  std::array<Eigen::Vector3d, kAxes> axes;
  std::array<Eigen::Matrix3d, kAxes> rotations;
};

const NvFrameSet& nv_frames();

/// Orientation branches are indexed 2*axis + flip, flip = 0 for NV and 1 for
/// the inverted VN partner, matching the ensemble loop order.
constexpr std::size_t orientation_index(std::size_t axis, bool vn) { return 2 * axis + (vn ? 1 : 0); }
constexpr std::size_t orientation_axis(std::size_t orientation) { return orientation / 2; }
constexpr bool orientation_is_vn(std::size_t orientation) { return orientation % 2 == 1; }

/// Relative abundance of the eight sub-populations; sums to one.
using OrientationWeights = std::array<double, kOrientations>;

OrientationWeights uniform_weights();

/// Per-axis abundances split evenly between NV and VN, normalized. The
/// two-axis preferential case is e.g. {0.47, 0.47, 0.03, 0.03}.
OrientationWeights axis_weights(const std::array<double, kAxes>& per_axis);

/// Throws InvalidArgument unless all weights are >= 0 with a positive sum.
OrientationWeights normalized(const OrientationWeights& weights);

std::array<FieldVector, kAxes> transform_all_frames(const FieldVector& b_lab);

/// (Bx, By, -Bz): the VN partner of an NV-frame vector.
inline FieldVector vn_flip(const FieldVector& b_nv) { return {b_nv.x(), b_nv.y(), -b_nv.z()}; }

/// Lab vector expressed in the frame of one orientation branch.
FieldVector orientation_frame(const FieldVector& b_lab, std::size_t orientation);

/// (sum_o w_o PL0_o - sum_o w_o PL_o(nu)) / sum_o w_o PL0_o for every column
/// of `pl` (8 rows x N frequency points).
std::vector<double> ensemble_contrast(std::span<const double, kOrientations> pl0,
                                      const Eigen::Matrix<double, kOrientations, Eigen::Dynamic>& pl,
                                      const OrientationWeights& weights);

}  // namespace nvodmr
