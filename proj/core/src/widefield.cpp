#include "nvodmr/widefield.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "nvodmr/error.hpp"

namespace nvodmr {

double GridGeometry::x_m(std::size_t ix) const {
  return (static_cast<double>(ix) - 0.5 * static_cast<double>(nx - 1)) * pitch_m;
}

double GridGeometry::y_m(std::size_t iy) const {
  return (static_cast<double>(iy) - 0.5 * static_cast<double>(ny - 1)) * pitch_m;
}

void GridGeometry::validate() const {
  if (nx < 1 || ny < 1) throw ConfigError("grid.nx", "grid must be at least 1x1");
  if (!(pitch_m > 0.0) || !std::isfinite(pitch_m)) throw ConfigError("grid.pitch", "must be > 0");
  if (!std::isfinite(beam_center_x_m) || !std::isfinite(beam_center_y_m)) {
    throw ConfigError("grid.beam_center", "must be finite");
  }
}

std::size_t WidefieldCube::failures() const {
  return static_cast<std::size_t>(
      std::count_if(errors.begin(), errors.end(), [](const std::string& e) { return !e.empty(); }));
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

WidefieldCube simulate_widefield(const FieldFunction& field, const ApparatusConfig& apparatus,
                                 const NoiseConfig& noise, const SweepGrid& sweep,
                                 const GridGeometry& grid, unsigned threads) {
  grid.validate();
  apparatus.validate();
  sweep.validate();
  if (!field) throw InvalidArgument("simulate_widefield: field function is empty");

  WidefieldCube cube;
  cube.grid = grid;
  cube.sweep = sweep;
  cube.pixels.resize(grid.size());
  cube.errors.resize(grid.size());

  parallel_for(grid.size(), threads, [&](std::size_t idx) {
    const std::size_t ix = idx % grid.nx;
    const std::size_t iy = idx / grid.nx;
    const double x = grid.x_m(ix);
    const double y = grid.y_m(iy);
    try {
      ApparatusConfig local = apparatus;
      local.laser_power_w = gaussian_beam_intensity(x - grid.beam_center_x_m,
                                                    y - grid.beam_center_y_m,
                                                    apparatus.laser_power_w,
                                                    apparatus.beam_waist_m);
      Spectrum s = simulate_spectrum(field(x, y), local, noise, sweep, idx);
      s.metadata["pixel_xy_m"] = {x, y};
      s.metadata["pixel_ix_iy"] = {ix, iy};
      cube.pixels[idx] = std::move(s);
    } catch (const std::exception& e) {
      cube.errors[idx] = e.what();
    }
  });
  return cube;
}

}  // namespace nvodmr
