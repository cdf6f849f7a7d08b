#pragma once

#include <cstddef>
#include <span>

namespace seizcnn::nn {

struct OptimizerConfig {
  double learning_rate = 0.01;
  double momentum = 0.9;
  std::size_t batch_size = 2048;

  void validate() const;
};

/// One SGD-with-momentum update, in place:
///   v <- momentum * v - lr * g
///   w <- w + v
/// `velocity` must start at zero for a fresh optimizer.
void sgd_momentum_step(std::span<double> weights, std::span<const double> grads,
                       std::span<double> velocity, const OptimizerConfig& cfg);

}  // namespace seizcnn::nn
