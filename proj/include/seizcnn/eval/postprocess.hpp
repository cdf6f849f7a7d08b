#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace seizcnn::eval {

/// Per-second seizure probabilities; entry k belongs to the window that
/// starts at second k.
struct ProbabilityTrace {
  std::string subject_id;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  bool operator==(const ProbabilityTrace&) const = default;
};

enum class ChannelCombine { max, mean };

struct PostProcessConfig {
  std::size_t moving_average_s = 60;
  std::size_t background_window_s = 600;
  double background_beta = 1.0;
  std::size_t collar_s = 30;
  ChannelCombine channel_combine = ChannelCombine::max;
};

/// Centered moving average over `window_s` samples, [t - w/2, t + w - 1 - w/2];
/// near the edges the mean is over the samples that exist.
std::vector<double> moving_average(std::span<const double> trace, std::size_t window_s = 60);

/// p(t) / (p(t) + beta * bg(t)), bg(t) the trailing mean of the last
/// `window_s` values (inclusive of t), floored at 1e-3.
std::vector<double> adapt_background(std::span<const double> trace, std::size_t window_s = 600,
                                     double beta = 1.0);

/// Extends every run of 1s by `collar_s` on each side, clipped to the trace.
std::vector<std::uint8_t> apply_collar(std::span<const std::uint8_t> decisions,
                                       std::size_t collar_s);

/// Per-second max (or mean) across channel traces of equal length.
std::vector<double> channel_fuse(std::span<const std::vector<double>> channels,
                                 ChannelCombine mode = ChannelCombine::max);

/// moving_average then adapt_background.
std::vector<double> smooth_trace(std::span<const double> raw, const PostProcessConfig& cfg);

/// apply_collar(trace >= threshold).
std::vector<std::uint8_t> detect(std::span<const double> smoothed, double threshold,
                                 std::size_t collar_s);

}  // namespace seizcnn::eval
