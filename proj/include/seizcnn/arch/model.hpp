#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "seizcnn/arch/network_spec.hpp"
#include "seizcnn/nn/layers.hpp"
#include "seizcnn/nn/optimizer.hpp"
#include "seizcnn/nn/tensor.hpp"

namespace seizcnn::arch {

using LayerState = std::variant<std::monostate, nn::ConvParams, nn::BatchNormParams>;

/// Named, shaped view of one parameter array, in serialization order.
struct ParamBlock {
  std::string name;  // e.g. "layer3.weight", "layer6.running_var"
  std::vector<std::size_t> shape;
  std::span<double> values;
  bool trainable;
};

struct ConstParamBlock {
  std::string name;
  std::vector<std::size_t> shape;
  std::span<const double> values;
  bool trainable;
};

/// Gradients of the trainable blocks, aligned with Model::param_blocks()
/// filtered to trainable entries.
using Gradients = std::vector<std::vector<double>>;

/// A NetworkSpec together with its parameters.
class Model {
public:
  Model(NetworkSpec spec, std::vector<LayerState> layers);

  const NetworkSpec& spec() const noexcept { return spec_; }
  const std::vector<LayerState>& layers() const noexcept { return layers_; }
  std::vector<LayerState>& layers() noexcept { return layers_; }

  /// Class probabilities, (batch, classes, 1). Infer mode.
  nn::Tensor predict(const nn::Tensor& x) const;

  /// Seizure-class probability of every window in `windows` (each
  /// spec().input.length samples, concatenated), evaluated in chunks.
  std::vector<double> seizure_probability(std::span<const double> windows,
                                          std::size_t chunk = 256) const;

  /// Train-mode forward + backward for mean cross-entropy over the batch.
  /// Returns the loss and fills `grads`; batch-norm running statistics are
  /// updated when `update_running_stats` is set. `probs_out`, when given,
  /// receives the train-mode class probabilities.
  double loss_and_gradients(const nn::Tensor& x, std::span<const int> labels, Gradients& grads,
                            bool update_running_stats = true,
                            std::vector<double>* probs_out = nullptr);

  std::vector<ParamBlock> param_blocks();
  std::vector<ConstParamBlock> param_blocks() const;

  std::size_t value_count() const;

  /// Rounds every parameter to the nearest float32, the on-disk precision.
  void round_to_float();

private:
  NetworkSpec spec_;
  std::vector<LayerState> layers_;
};

/// Allocates parameters for `spec` and initializes them deterministically:
/// conv weights uniform in +-sqrt(6 / (in_ch * k)), zero biases, gamma 1,
/// beta 0, running mean 0, running variance 1.
Model assemble(const NetworkSpec& spec, std::uint64_t seed);

/// Momentum buffers for every trainable block of a model.
class SgdMomentum {
public:
  SgdMomentum(const Model& model, nn::OptimizerConfig cfg);

  void step(Model& model, const Gradients& grads);

  const nn::OptimizerConfig& config() const noexcept { return cfg_; }

private:
  nn::OptimizerConfig cfg_;
  std::vector<std::vector<double>> velocity_;
};

}  // namespace seizcnn::arch
