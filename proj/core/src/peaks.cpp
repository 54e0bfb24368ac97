#include "nvodmr/peaks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nvodmr/error.hpp"

namespace nvodmr {

namespace {

constexpr std::size_t kMinWindow = 5;

std::vector<std::size_t> local_maxima(std::span<const double> y) {
  std::vector<std::size_t> out;
  const std::size_t n = y.size();
  if (n < 3) return out;
  std::size_t i = 1;
  while (i < n - 1) {
    if (y[i - 1] < y[i]) {
      std::size_t ahead = i + 1;
      while (ahead < n - 1 && y[ahead] == y[i]) ++ahead;
      if (y[ahead] < y[i]) {
        out.push_back((i + ahead - 1) / 2);
        i = ahead;
      }
    }
    ++i;
  }
  return out;
}

}  // namespace

std::vector<Peak> find_peaks(std::span<const double> y, double min_prominence) {
  std::vector<Peak> peaks;
  const std::size_t n = y.size();
  for (std::size_t p : local_maxima(y)) {
    const double top = y[p];

    std::size_t left_base = p;
    double left_min = top;
    for (std::size_t i = p + 1; i-- > 0;) {
      if (y[i] > top) break;
      if (y[i] < left_min) {
        left_min = y[i];
        left_base = i;
      }
    }
    std::size_t right_base = p;
    double right_min = top;
    for (std::size_t i = p; i < n; ++i) {
      if (y[i] > top) break;
      if (y[i] < right_min) {
        right_min = y[i];
        right_base = i;
      }
    }

    const double prominence = top - std::max(left_min, right_min);
    if (prominence < min_prominence) continue;

    const double level = top - 0.5 * prominence;
    std::size_t i = p;
    while (i > left_base && level < y[i]) --i;
    double left_ips = static_cast<double>(i);
    if (y[i] < level) left_ips += (level - y[i]) / (y[i + 1] - y[i]);

    i = p;
    while (i < right_base && level < y[i]) ++i;
    double right_ips = static_cast<double>(i);
    if (y[i] < level) right_ips -= (level - y[i]) / (y[i - 1] - y[i]);

    peaks.push_back({p, top, prominence, right_ips - left_ips, left_ips, right_ips});
  }
  return peaks;
}

std::vector<PeakFit> detect_and_fit(std::span<const double> freqs_hz, std::span<const double> values,
                                    const PeakSearchOptions& options) {
  if (freqs_hz.size() != values.size()) {
    throw InvalidArgument("detect_and_fit: frequency and value arrays differ in length");
  }
  const std::size_t n = values.size();
  if (n < kMinWindow) throw InvalidArgument("detect_and_fit: need at least 5 samples");

  std::vector<double> y(values.begin(), values.end());
  if (options.invert) {
    for (double& v : y) v = 1.0 - v;
  }
  const double step = (freqs_hz.back() - freqs_hz.front()) / static_cast<double>(n - 1);

  std::vector<PeakFit> out;
  for (const Peak& peak : find_peaks(y, options.prominence)) {
    const double half_width = 0.5 * peak.width;
    const auto reach = static_cast<std::size_t>(
        std::ceil(std::max(options.window_half_widths * half_width, 2.0)));
    std::size_t begin = peak.index >= reach ? peak.index - reach : 0;
    std::size_t end = std::min(n, peak.index + reach + 1);
    while (end - begin < kMinWindow) {
      if (begin > 0) --begin;
      if (end - begin < kMinWindow && end < n) ++end;
    }

    LorentzianParams init;
    init.amplitude = y[peak.index];
    init.center = freqs_hz[peak.index];
    init.gamma = half_width > 0.0 ? half_width * step
                                  : (freqs_hz.back() - freqs_hz.front()) / 200.0;

    const std::span<const double> fx = freqs_hz.subspan(begin, end - begin);
    const std::span<const double> fy(y.data() + begin, end - begin);
    PeakFit pf{peak, lorentzian_fit(fx, fy, init), begin, end};

    // noise bumps above the threshold can yield fits that run off; they are
    // not resonances
    const double c = pf.fit.params.center;
    if (!std::isfinite(c) || !std::isfinite(pf.fit.params.gamma) || !(pf.fit.params.gamma > 0.0) ||
        c < fx.front() || c > fx.back()) {
      continue;
    }
    out.push_back(pf);
  }
  std::sort(out.begin(), out.end(), [](const PeakFit& a, const PeakFit& b) {
    return a.fit.params.center < b.fit.params.center;
  });
  return out;
}

std::vector<double> find_and_fit_peaks(const Spectrum& spectrum, const PeakSearchOptions& options,
                                       std::size_t expected) {
  const std::vector<PeakFit> fits = detect_and_fit(spectrum.freqs_hz, spectrum.contrast, options);
  if (fits.size() != expected) {
    std::ostringstream msg;
    msg << "find_and_fit_peaks: found " << fits.size() << " resonances, expected " << expected;
    throw PeakCountError(msg.str(), fits.size(), expected);
  }
  std::vector<double> centers;
  centers.reserve(fits.size());
  for (const auto& f : fits) centers.push_back(f.fit.params.center);
  return centers;
}

}  // namespace nvodmr
