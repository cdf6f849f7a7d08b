#include "seizcnn/eval/evaluate.hpp"

#include "seizcnn/eval/metrics.hpp"

namespace seizcnn::eval {

TraceMetrics evaluate_trace(std::span<const double> raw, std::span<const std::uint8_t> labels,
                            const PostProcessConfig& cfg, double max_fdh) {
  const auto smoothed = smooth_trace(raw, cfg);
  const auto curve = roc(smoothed, labels);
  TraceMetrics m;
  m.auc = auc(curve);
  m.auc90 = auc90(curve);
  const auto at = sensitivity_at_fdh(smoothed, labels, max_fdh, cfg.collar_s);
  m.sensitivity_at_fdh = at.sensitivity;
  m.fdh_constraint_met = at.constraint_met;
  for (double h : kFdhThresholds) {
    const auto d = detect(smoothed, h, cfg.collar_s);
    m.fdh_table.push_back({h, fd_per_hour(d, labels), sensitivity_pct(d, labels)});
  }
  return m;
}

}  // namespace seizcnn::eval
