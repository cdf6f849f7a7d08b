#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "seizcnn/eval/postprocess.hpp"

namespace seizcnn::eval {

/// Thresholds at which the FD/h table of a trace is reported.
inline constexpr double kFdhThresholds[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

struct FdhEntry {
  double threshold;
  double fd_per_hour;
  double sensitivity;  // percent
};

struct TraceMetrics {
  double auc = 0.0;
  double auc90 = 0.0;
  double sensitivity_at_fdh = 0.0;
  bool fdh_constraint_met = false;
  std::vector<FdhEntry> fdh_table;
};

/// Runs the post-processing chain on a raw (channel-fused) per-second trace
/// and scores it against per-second labels of the same length.
TraceMetrics evaluate_trace(std::span<const double> raw, std::span<const std::uint8_t> labels,
                            const PostProcessConfig& cfg, double max_fdh = 0.25);

}  // namespace seizcnn::eval
