#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "seizcnn/shallow/features.hpp"

namespace seizcnn::shallow {

/// L2-regularized logistic regression on standardized features.
struct BaselineModel {
  FeatureVector feature_mean{};
  FeatureVector feature_scale{};  // standard deviation, 1 where a feature is constant
  FeatureVector weights{};
  double bias = 0.0;
  double l2 = 1e-3;

  /// Linear score clamped to +-30 before the sigmoid, which keeps the
  /// probability strictly inside (0, 1).
  double probability(const FeatureVector& features) const;

  bool operator==(const BaselineModel&) const = default;
};

struct TrainBaselineConfig {
  double l2 = 1e-3;
  std::size_t max_iterations = 5000;
  double gradient_tolerance = 1e-8;
};

struct BaselineFit {
  BaselineModel model;
  std::vector<double> loss_history;  // one entry per iteration, before the step
};

/// Regularized mean log-loss and its gradient at (weights, bias) on already
/// standardized features:
///   L = mean_i logloss(sigmoid(w.x_i + b), y_i) + l2/2 * |w|^2
/// The bias is not regularized. `grad` receives d/dw followed by d/db.
double logistic_loss(std::span<const FeatureVector> standardized, std::span<const int> labels,
                     const FeatureVector& weights, double bias, double l2,
                     std::vector<double>* grad = nullptr);

/// Full-batch gradient descent with step 1 / (0.25 * (d + 1) + l2), an upper
/// bound on the gradient's Lipschitz constant for standardized features, so
/// the loss never increases. Stops when the gradient norm drops below the
/// tolerance or after max_iterations.
BaselineFit train_baseline(std::span<const FeatureVector> features, std::span<const int> labels,
                           const TrainBaselineConfig& cfg = {});

double baseline_probability(const BaselineModel& model, std::span<const double> window,
                            double fs = 32.0);

}  // namespace seizcnn::shallow
