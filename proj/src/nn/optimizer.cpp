#include "seizcnn/nn/optimizer.hpp"

#include "seizcnn/error.hpp"

namespace seizcnn::nn {

void OptimizerConfig::validate() const {
  if (!(learning_rate > 0.0)) throw_usage_error("learning rate must be > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw_usage_error("momentum must be in [0, 1)");
  if (batch_size == 0) throw_usage_error("batch size must be >= 1");
}

void sgd_momentum_step(std::span<double> weights, std::span<const double> grads,
                       std::span<double> velocity, const OptimizerConfig& cfg) {
  if (weights.size() != grads.size() || weights.size() != velocity.size()) {
    throw_data_error("sgd step: weight/gradient/velocity sizes differ");
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    velocity[i] = cfg.momentum * velocity[i] - cfg.learning_rate * grads[i];
    weights[i] += velocity[i];
  }
}

}  // namespace seizcnn::nn
