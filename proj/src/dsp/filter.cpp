#include "seizcnn/dsp/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "seizcnn/error.hpp"

namespace seizcnn::dsp {

namespace {

std::vector<double> windowed_sinc_lowpass(double cutoff_hz, double fs, std::size_t taps) {
  const double fc = cutoff_hz / fs;
  const auto mid = static_cast<double>(taps - 1) / 2.0;
  std::vector<double> h(taps);
  double sum = 0.0;
  for (std::size_t i = 0; i < taps; ++i) {
    const double m = static_cast<double>(i) - mid;
    const double sinc =
        m == 0.0 ? 2.0 * fc : std::sin(2.0 * std::numbers::pi * fc * m) / (std::numbers::pi * m);
    const double window =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                               static_cast<double>(taps - 1));
    h[i] = sinc * window;
    sum += h[i];
  }
  for (double& v : h) v /= sum;
  return h;
}

double filter_at(std::span<const double> x, std::span<const double> h, std::size_t n) {
  // y[n] = sum_k h[k] x[n + delay - k], zero outside [0, N).
  const std::ptrdiff_t delay = static_cast<std::ptrdiff_t>(h.size() - 1) / 2;
  const auto len = static_cast<std::ptrdiff_t>(x.size());
  const auto taps = static_cast<std::ptrdiff_t>(h.size());
  const std::ptrdiff_t base = static_cast<std::ptrdiff_t>(n) + delay;
  // k range where 0 <= base - k < len.
  const std::ptrdiff_t k_lo = std::max<std::ptrdiff_t>(0, base - len + 1);
  const std::ptrdiff_t k_hi = std::min<std::ptrdiff_t>(taps - 1, base);
  double acc = 0.0;
  for (std::ptrdiff_t k = k_lo; k <= k_hi; ++k) acc += h[static_cast<std::size_t>(k)] *
                                                      x[static_cast<std::size_t>(base - k)];
  return acc;
}

}  // namespace

void FilterSpec::validate(double fs) const {
  if (!(fs > 0.0)) throw_data_error("sample rate must be positive");
  if (!(low_cut_hz > 0.0 && low_cut_hz < high_cut_hz)) {
    throw_data_error("band edges must satisfy 0 < low_cut < high_cut");
  }
  if (!(high_cut_hz < fs / 2.0)) {
    throw_data_error("sample rate " + std::to_string(fs) + " Hz too low for a " +
                     std::to_string(high_cut_hz) + " Hz upper band edge");
  }
  if (taps < 3 || taps % 2 == 0) throw_data_error("filter tap count must be odd and >= 3");
}

std::vector<double> design_bandpass(double fs, const FilterSpec& spec) {
  spec.validate(fs);
  auto high = windowed_sinc_lowpass(spec.high_cut_hz, fs, spec.taps);
  const auto low = windowed_sinc_lowpass(spec.low_cut_hz, fs, spec.taps);
  for (std::size_t i = 0; i < high.size(); ++i) high[i] -= low[i];
  return high;
}

std::vector<double> bandpass(std::span<const double> signal, double fs, const FilterSpec& spec) {
  const auto h = design_bandpass(fs, spec);
  std::vector<double> out(signal.size());
  for (std::size_t n = 0; n < signal.size(); ++n) out[n] = filter_at(signal, h, n);
  return out;
}

std::size_t decimation_factor(double fs_in, double fs_out) {
  if (!(fs_in > 0.0 && fs_out > 0.0)) throw_data_error("sample rates must be positive");
  const double ratio = fs_in / fs_out;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9) {
    throw_data_error("decimation ratio " + std::to_string(ratio) + " is not an integer");
  }
  return static_cast<std::size_t>(rounded);
}

std::vector<double> decimate(std::span<const double> signal, double fs_in, double fs_out) {
  const std::size_t factor = decimation_factor(fs_in, fs_out);
  std::vector<double> out(signal.size() / factor);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = signal[i * factor];
  return out;
}

std::vector<double> bandpass_decimate(std::span<const double> signal, double fs_in,
                                      double fs_out, const FilterSpec& spec) {
  const std::size_t factor = decimation_factor(fs_in, fs_out);
  const auto h = design_bandpass(fs_in, spec);
  std::vector<double> out(signal.size() / factor);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = filter_at(signal, h, i * factor);
  return out;
}

}  // namespace seizcnn::dsp
