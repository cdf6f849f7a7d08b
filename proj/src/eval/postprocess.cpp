#include "seizcnn/eval/postprocess.hpp"

#include <algorithm>

#include "seizcnn/error.hpp"

namespace seizcnn::eval {

std::vector<double> moving_average(std::span<const double> trace, std::size_t window_s) {
  if (trace.empty()) throw_data_error("moving_average: empty trace");
  if (window_s == 0) throw_usage_error("moving_average: window must be >= 1 s");
  const std::size_t n = trace.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + trace[i];
  const std::size_t before = window_s / 2;
  const std::size_t after = window_s - 1 - before;
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t lo = t >= before ? t - before : 0;
    const std::size_t hi = std::min(n - 1, t + after);
    out[t] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::vector<double> adapt_background(std::span<const double> trace, std::size_t window_s,
                                     double beta) {
  if (window_s == 0) throw_usage_error("adapt_background: window must be >= 1 s");
  const std::size_t n = trace.size();
  std::vector<double> out(n);
  double sum = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    sum += trace[t];
    if (t >= window_s) sum -= trace[t - window_s];
    const std::size_t count = std::min(t + 1, window_s);
    const double bg = std::max(sum / static_cast<double>(count), 1e-3);
    const double p = trace[t];
    out[t] = p / (p + beta * bg);
  }
  return out;
}

std::vector<std::uint8_t> apply_collar(std::span<const std::uint8_t> decisions,
                                       std::size_t collar_s) {
  const std::size_t n = decisions.size();
  std::vector<std::uint8_t> out(decisions.begin(), decisions.end());
  if (collar_s == 0) return out;
  std::size_t t = 0;
  while (t < n) {
    if (decisions[t] == 0) {
      ++t;
      continue;
    }
    std::size_t end = t;
    while (end < n && decisions[end] != 0) ++end;
    const std::size_t lo = t >= collar_s ? t - collar_s : 0;
    const std::size_t hi = std::min(n, end + collar_s);
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(lo),
              out.begin() + static_cast<std::ptrdiff_t>(hi), std::uint8_t{1});
    t = end;
  }
  return out;
}

std::vector<double> channel_fuse(std::span<const std::vector<double>> channels,
                                 ChannelCombine mode) {
  if (channels.empty()) throw_data_error("channel_fuse: no channels");
  const std::size_t n = channels.front().size();
  for (const auto& c : channels) {
    if (c.size() != n) throw_data_error("channel_fuse: channel traces differ in length");
  }
  std::vector<double> out(channels.front());
  for (std::size_t c = 1; c < channels.size(); ++c) {
    for (std::size_t t = 0; t < n; ++t) {
      out[t] = mode == ChannelCombine::max ? std::max(out[t], channels[c][t])
                                           : out[t] + channels[c][t];
    }
  }
  if (mode == ChannelCombine::mean) {
    for (double& v : out) v /= static_cast<double>(channels.size());
  }
  return out;
}

std::vector<double> smooth_trace(std::span<const double> raw, const PostProcessConfig& cfg) {
  const auto ma = moving_average(raw, cfg.moving_average_s);
  return adapt_background(ma, cfg.background_window_s, cfg.background_beta);
}

std::vector<std::uint8_t> detect(std::span<const double> smoothed, double threshold,
                                 std::size_t collar_s) {
  std::vector<std::uint8_t> d(smoothed.size());
  for (std::size_t t = 0; t < smoothed.size(); ++t) d[t] = smoothed[t] >= threshold ? 1 : 0;
  return apply_collar(d, collar_s);
}

}  // namespace seizcnn::eval
