#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nvodmr {

/// Kernel radius int(4 sigma + 0.5) in samples.
std::size_t gaussian_radius(double sigma);

/// Normalized Gaussian kernel truncated at gaussian_radius(sigma), with
/// reflect padding (d c b a | a b c d | d c b a). sigma = 0 copies the input.
std::vector<double> gaussian_filter_1d(std::span<const double> y, double sigma);

/// Spatial Gaussian (sigma_s, truncated like the Gaussian filter and at
/// +-window) times range Gaussian (sigma_r, in signal units), renormalized per
/// sample. sigma_r may be +infinity, which reduces to the Gaussian filter
/// whenever window >= gaussian_radius(sigma_s).
std::vector<double> bilateral_filter_1d(std::span<const double> y, double sigma_s, double sigma_r,
                                        std::size_t window);

/// Index into [0, n) after reflecting about the array edges.
std::size_t reflect_index(std::ptrdiff_t i, std::size_t n);

}  // namespace nvodmr
