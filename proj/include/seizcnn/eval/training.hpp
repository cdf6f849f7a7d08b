#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "seizcnn/arch/model.hpp"
#include "seizcnn/nn/optimizer.hpp"
#include "seizcnn/random.hpp"

namespace seizcnn::eval {

/// Windows stored back to back with one 0/1 label each.
struct LabeledWindows {
  std::size_t window_length = 256;
  std::vector<double> samples;
  std::vector<std::uint8_t> labels;

  std::size_t size() const noexcept { return labels.size(); }
  std::span<const double> window(std::size_t i) const {
    return {samples.data() + i * window_length, window_length};
  }
  void append(std::span<const double> w, std::uint8_t label);
};

struct TrainConfig {
  nn::OptimizerConfig optimizer;
  std::size_t epochs = 100;
  std::uint64_t seed = 1;
  // Inference-mode accuracy on the training set after every epoch; costs one
  // extra forward pass over the training windows.
  bool track_train_accuracy = false;
  // Stop once tracked training accuracy reaches this fraction (0 disables).
  double stop_at_train_accuracy = 0.0;

  void validate() const;
};

struct EpochRecord {
  std::size_t epoch;  // 1-based
  double train_loss;  // mean over mini-batches
  double train_accuracy;  // NaN unless tracked
  double validation_auc;  // percent
};

struct TrainResult {
  arch::Model model;  // best-validation snapshot
  std::vector<EpochRecord> log;
  std::size_t best_epoch;
  double best_validation_auc;
};

/// Mini-batch SGD with momentum on shuffled training windows. After every
/// epoch the inference-mode validation AUC over all validation windows is
/// recorded; the returned weights are from the first epoch reaching the
/// maximum.
TrainResult train_model(const arch::NetworkSpec& spec, const LabeledWindows& train,
                        const LabeledWindows& validation, const TrainConfig& cfg);

/// Indices of a class-balanced random subset: `count / 2` of each class,
/// capped by the smaller class. Returned in ascending order.
std::vector<std::size_t> select_balanced(std::span<const std::uint8_t> labels, std::size_t count,
                                         Rng& rng);

/// Fraction of windows whose thresholded (>= 0.5) probability matches the label.
double accuracy(std::span<const double> probabilities, std::span<const std::uint8_t> labels);

}  // namespace seizcnn::eval
