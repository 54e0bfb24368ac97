#include "nvodmr/ensemble.hpp"

#include <cmath>

#include "nvodmr/error.hpp"

namespace nvodmr {

namespace {

NvFrameSet make_frames() {
  const double a = std::sqrt(2.0 / 3.0);
  const double b = std::sqrt(1.0 / 3.0);
  NvFrameSet f;
  f.axes[0] = {a, 0.0, b};
  f.axes[1] = {0.0, -a, -b};
  f.axes[2] = {0.0, a, -b};
  f.axes[3] = {-a, 0.0, b};

  f.rotations[0] << 0, 1, 0,
                    -b, 0, a,
                    a, 0, b;
  f.rotations[1] << 1, 0, 0,
                    0, b, -a,
                    0, -a, -b;
  f.rotations[2] << 1, 0, 0,
                    0, -b, -a,
                    0, a, -b;
  f.rotations[3] << 0, 1, 0,
                    b, 0, a,
                    -a, 0, b;
  return f;
}

}  // namespace

const NvFrameSet& nv_frames() {
  static const NvFrameSet frames = make_frames();
  return frames;
}

OrientationWeights uniform_weights() {
  OrientationWeights w;
  w.fill(1.0 / static_cast<double>(kOrientations));
  return w;
}

OrientationWeights normalized(const OrientationWeights& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("orientation weights must be finite and >= 0");
    }
    total += w;
  }
  if (total <= 0.0) throw InvalidArgument("orientation weights must have a positive sum");
  OrientationWeights out = weights;
  for (double& w : out) w /= total;
  return out;
}

OrientationWeights axis_weights(const std::array<double, kAxes>& per_axis) {
  OrientationWeights w{};
  for (std::size_t i = 0; i < kAxes; ++i) {
    w[orientation_index(i, false)] = 0.5 * per_axis[i];
    w[orientation_index(i, true)] = 0.5 * per_axis[i];
  }
  return normalized(w);
}

std::array<FieldVector, kAxes> transform_all_frames(const FieldVector& b_lab) {
  const auto& frames = nv_frames();
  std::array<FieldVector, kAxes> out;
  for (std::size_t i = 0; i < kAxes; ++i) out[i] = frames.rotations[i] * b_lab;
  return out;
}

FieldVector orientation_frame(const FieldVector& b_lab, std::size_t orientation) {
  const FieldVector b = nv_frames().rotations[orientation_axis(orientation)] * b_lab;
  return orientation_is_vn(orientation) ? vn_flip(b) : b;
}

std::vector<double> ensemble_contrast(std::span<const double, kOrientations> pl0,
                                      const Eigen::Matrix<double, kOrientations, Eigen::Dynamic>& pl,
                                      const OrientationWeights& weights) {
  double baseline = 0.0;
  for (std::size_t o = 0; o < kOrientations; ++o) {
    if (pl0[o] < 0.0) throw InvalidArgument("ensemble_contrast: baseline PL must be >= 0");
    baseline += weights[o] * pl0[o];
  }
  if (!(baseline > 0.0)) throw InvalidArgument("ensemble_contrast: total baseline PL is zero");

  Eigen::Matrix<double, 1, kOrientations> w;
  for (std::size_t o = 0; o < kOrientations; ++o) w(static_cast<Eigen::Index>(o)) = weights[o];
  const Eigen::RowVectorXd weighted = w * pl;

  std::vector<double> contrast(static_cast<std::size_t>(pl.cols()));
  for (Eigen::Index k = 0; k < pl.cols(); ++k) {
    contrast[static_cast<std::size_t>(k)] = (baseline - weighted(k)) / baseline;
  }
  return contrast;
}

}  // namespace nvodmr
