#include "seizcnn/dsp/preprocess.hpp"

#include <cmath>

#include "seizcnn/eegio/recording.hpp"
#include "seizcnn/error.hpp"

namespace seizcnn::dsp {

namespace {

std::size_t seconds_to_samples(double seconds, double fs, const char* what) {
  const double n = seconds * fs;
  const double rounded = std::round(n);
  if (rounded < 1.0 || std::abs(n - rounded) > 1e-9) {
    throw_data_error(std::string(what) + " of " + std::to_string(seconds) +
                     " s is not a whole number of samples");
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace

std::size_t window_count(std::size_t n_samples, double fs, double length_s, double shift_s) {
  const std::size_t len = seconds_to_samples(length_s, fs, "window length");
  const std::size_t shift = seconds_to_samples(shift_s, fs, "window shift");
  if (n_samples < len) return 0;
  return (n_samples - len) / shift + 1;
}

WindowBatch window(std::span<const double> signal, double fs, double length_s, double shift_s) {
  const std::size_t len = seconds_to_samples(length_s, fs, "window length");
  const std::size_t shift = seconds_to_samples(shift_s, fs, "window shift");
  if (signal.size() < len) {
    throw_data_error("signal of " + std::to_string(signal.size()) +
                     " samples is shorter than one window (" + std::to_string(len) + ")");
  }
  const std::size_t count = (signal.size() - len) / shift + 1;
  WindowBatch out;
  out.window_length = len;
  out.samples.reserve(count * len);
  out.origins.reserve(count);
  const auto shift_seconds = static_cast<std::size_t>(std::llround(shift_s));
  for (std::size_t k = 0; k < count; ++k) {
    const auto seg = signal.subspan(k * shift, len);
    out.samples.insert(out.samples.end(), seg.begin(), seg.end());
    out.origins.push_back({{}, 0, k * shift_seconds});
  }
  return out;
}

void standardize(std::span<double> values) {
  if (values.empty()) return;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  const double inv = 1.0 / std::sqrt(std::max(var, 1e-8));
  for (double& v : values) v = (v - mean) * inv;
}

std::vector<WindowBatch> preprocess(const eegio::EegRecording& rec, const PreprocessConfig& cfg) {
  rec.validate();
  if (rec.sample_rate_hz < 2.0 * cfg.target_fs) {
    throw_data_error(rec.subject_id + ": sample rate " + std::to_string(rec.sample_rate_hz) +
                     " Hz is below the 64 Hz minimum");
  }
  std::vector<WindowBatch> out;
  out.reserve(rec.n_channels());
  std::vector<double> channel;
  for (std::size_t c = 0; c < rec.n_channels(); ++c) {
    channel.assign(rec.samples[c].begin(), rec.samples[c].end());
    const auto low = bandpass_decimate(channel, rec.sample_rate_hz, cfg.target_fs, cfg.filter);
    auto batch = window(low, cfg.target_fs, cfg.window_s, cfg.shift_s);
    for (auto& o : batch.origins) {
      o.subject_id = rec.subject_id;
      o.channel = c;
    }
    if (cfg.standardize) {
      for (std::size_t k = 0; k < batch.size(); ++k) standardize(batch.window(k));
    }
    out.push_back(std::move(batch));
  }
  return out;
}

}  // namespace seizcnn::dsp
