#pragma once

#include <span>

namespace seizcnn::eval {

struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;
};

/// Mean and 95% half-width 1.96 * s / sqrt(n), s with the n-1 denominator.
/// Throws for fewer than two values.
MeanCi mean_ci(std::span<const double> values);

}  // namespace seizcnn::eval
