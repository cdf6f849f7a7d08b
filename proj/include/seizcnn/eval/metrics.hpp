#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

namespace seizcnn::eval {

struct RocPoint {
  double threshold;
  double sensitivity;
  double specificity;
};

/// Epoch-based ROC. Points are ordered by increasing threshold, from -inf
/// (everything positive: sensitivity 1, specificity 0) through every
/// distinct score to +inf (sensitivity 0, specificity 1). A sample counts
/// as positive at threshold h when score >= h.
struct RocCurve {
  std::vector<RocPoint> points;
};

RocCurve roc(std::span<const double> scores, std::span<const std::uint8_t> labels);

/// Trapezoidal area under sensitivity vs specificity, in percent. Equal to
/// the Mann-Whitney statistic with ties counted 1/2.
double auc(const RocCurve& curve);

/// Area under the curve restricted to specificity in [0.9, 1], divided by
/// the 0.1 span and reported in percent, so a perfect classifier scores
/// 100 and the chance diagonal scores 5.
double auc90(const RocCurve& curve);

/// CSV `threshold,sensitivity,specificity`.
void write_roc_csv(std::ostream& os, const RocCurve& curve);

/// False detections per hour: maximal runs of 1 in `decisions` that touch
/// no labelled seizure second, divided by the record length in hours.
double fd_per_hour(std::span<const std::uint8_t> decisions, std::span<const std::uint8_t> labels);

/// Fraction (percent) of seizure seconds flagged, and of non-seizure
/// seconds left unflagged.
double sensitivity_pct(std::span<const std::uint8_t> decisions, std::span<const std::uint8_t> labels);
double specificity_pct(std::span<const std::uint8_t> decisions, std::span<const std::uint8_t> labels);

struct SensitivityAtFdh {
  double sensitivity = 0.0;  // percent
  double threshold = 0.0;
  double fd_per_hour = 0.0;
  bool constraint_met = false;
};

/// Sweeps every distinct positive value of `smoothed` as a threshold,
/// highest first, collaring the decisions at each step. The sweep stops at
/// the first threshold whose false-detection rate exceeds max_fdh; the
/// result is the sensitivity at the last threshold before that. Without the
/// stop, a threshold low enough to merge the whole record into one run that
/// touches a seizure would count as zero false detections. When even the
/// highest threshold fails, sensitivity is 0 and constraint_met is false.
SensitivityAtFdh sensitivity_at_fdh(std::span<const double> smoothed,
                                    std::span<const std::uint8_t> labels, double max_fdh = 0.25,
                                    std::size_t collar_s = 30);

}  // namespace seizcnn::eval
