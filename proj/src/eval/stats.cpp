#include "seizcnn/eval/stats.hpp"

#include <cmath>

#include "seizcnn/error.hpp"

namespace seizcnn::eval {

MeanCi mean_ci(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw_data_error("mean_ci: need at least two values");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double s = std::sqrt(ss / static_cast<double>(n - 1));
  return {mean, 1.96 * s / std::sqrt(static_cast<double>(n))};
}

}  // namespace seizcnn::eval
