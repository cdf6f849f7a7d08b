#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "seizcnn/dsp/filter.hpp"

namespace seizcnn::eegio {
struct EegRecording;
}

namespace seizcnn::dsp {

struct WindowOrigin {
  std::string subject_id;
  std::size_t channel;
  std::size_t start_second;
};

/// Fixed-length single-channel segments stored back to back.
struct WindowBatch {
  std::size_t window_length = 256;
  std::vector<double> samples;
  std::vector<WindowOrigin> origins;

  std::size_t size() const noexcept { return origins.size(); }
  std::span<const double> window(std::size_t i) const {
    return {samples.data() + i * window_length, window_length};
  }
  std::span<double> window(std::size_t i) {
    return {samples.data() + i * window_length, window_length};
  }
};

/// Windows of `length_s` seconds every `shift_s` seconds; window k covers
/// samples [k * shift, k * shift + length). Windows never run past the end.
WindowBatch window(std::span<const double> signal, double fs, double length_s = 8.0,
                   double shift_s = 1.0);

/// Number of windows `window` produces for `n_samples` samples.
std::size_t window_count(std::size_t n_samples, double fs, double length_s = 8.0,
                         double shift_s = 1.0);

/// Zero mean, unit variance in place; variance floored at 1e-8.
void standardize(std::span<double> values);

struct PreprocessConfig {
  FilterSpec filter;
  double target_fs = 32.0;
  double window_s = 8.0;
  double shift_s = 1.0;
  bool standardize = true;
};

/// Band-pass, decimate to 32 Hz and window every channel.
std::vector<WindowBatch> preprocess(const eegio::EegRecording& rec,
                                    const PreprocessConfig& cfg = {});

}  // namespace seizcnn::dsp
