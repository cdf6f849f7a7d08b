#include "seizcnn/shallow/features.hpp"

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <vector>

#include <fftw3.h>

#include "seizcnn/error.hpp"

namespace seizcnn::shallow {

namespace {

constexpr std::size_t kWindow = 256;
constexpr std::size_t kBins = kWindow / 2 + 1;

// One plan per thread; FFTW planning is not re-entrant, execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Spectrum {
public:
  Spectrum() {
    const std::lock_guard lock(planner_mutex());
    in_ = fftw_alloc_real(kWindow);
    out_ = fftw_alloc_complex(kBins);
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(kWindow), in_, out_, FFTW_ESTIMATE);
    hann_.resize(kWindow);
    for (std::size_t i = 0; i < kWindow; ++i) {
      hann_[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(kWindow));
    }
  }
  ~Spectrum() {
    const std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  Spectrum(const Spectrum&) = delete;
  Spectrum& operator=(const Spectrum&) = delete;

  // Power of bins 0..128 for a mean-removed window.
  std::vector<double> power(std::span<const double> centered) {
    for (std::size_t i = 0; i < kWindow; ++i) in_[i] = centered[i] * hann_[i];
    fftw_execute(plan_);
    std::vector<double> p(kBins);
    for (std::size_t k = 0; k < kBins; ++k) p[k] = out_[k][0] * out_[k][0] + out_[k][1] * out_[k][1];
    return p;
  }

private:
  double* in_;
  fftw_complex* out_;
  fftw_plan plan_;
  std::vector<double> hann_;
};

Spectrum& spectrum() {
  thread_local Spectrum s;
  return s;
}

double variance(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m += v;
  m /= static_cast<double>(x.size());
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size());
}

std::vector<double> diff(std::span<const double> x) {
  std::vector<double> d(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) d[i - 1] = x[i] - x[i - 1];
  return d;
}

}  // namespace

FeatureVector extract_features(std::span<const double> window, double fs) {
  if (window.size() != kWindow) {
    throw_data_error("feature extraction expects 256-sample windows, got " +
                     std::to_string(window.size()));
  }
  FeatureVector f{};
  const double n = static_cast<double>(kWindow);

  double sq = 0.0;
  double mean = 0.0;
  for (double v : window) {
    sq += v * v;
    mean += v;
  }
  mean /= n;
  f[0] = std::sqrt(sq / n);

  double ll = 0.0;
  for (std::size_t i = 1; i < kWindow; ++i) ll += std::abs(window[i] - window[i - 1]);
  f[1] = ll;

  std::vector<double> centered(kWindow);
  for (std::size_t i = 0; i < kWindow; ++i) centered[i] = window[i] - mean;
  double zc = 0.0;
  for (std::size_t i = 1; i < kWindow; ++i) {
    if (centered[i - 1] * centered[i] < 0.0) zc += 1.0;
  }
  f[2] = zc;

  const auto d1 = diff(window);
  const auto d2 = diff(d1);
  const double v0 = variance(window);
  const double v1 = variance(d1);
  const double v2 = variance(d2);
  const double mobility = v0 > 0.0 ? std::sqrt(v1 / v0) : 0.0;
  const double mobility_d = v1 > 0.0 ? std::sqrt(v2 / v1) : 0.0;
  f[3] = mobility;
  f[4] = mobility > 0.0 ? mobility_d / mobility : 0.0;

  const auto power = spectrum().power(centered);
  const double bin_hz = fs / n;
  double total = 0.0;
  for (std::size_t k = 1; k < kBins; ++k) total += power[k];
  if (total > 0.0) {
    double cum = 0.0;
    for (std::size_t k = 1; k < kBins; ++k) {
      cum += power[k];
      if (cum >= 0.8 * total) {
        f[5] = static_cast<double>(k) * bin_hz;
        break;
      }
    }
    double delta = 0.0;
    for (std::size_t k = 1; k < kBins; ++k) {
      const double hz = static_cast<double>(k) * bin_hz;
      if (hz >= 1.0 && hz <= 4.0) delta += power[k];
    }
    f[6] = delta / total;
    double h = 0.0;
    for (std::size_t k = 1; k < kBins; ++k) {
      const double p = power[k] / total;
      if (p > 0.0) h -= p * std::log(p);
    }
    f[7] = h / std::log(static_cast<double>(kBins - 1));
  }
  return f;
}

}  // namespace seizcnn::shallow
