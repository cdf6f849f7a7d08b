#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "seizcnn/nn/tensor.hpp"

namespace seizcnn::nn {

enum class Mode { train, infer };

// ---------------------------------------------------------------------------
// Convolution
//
// Valid cross-correlation, stride 1, no padding:
//   out[b,o,t] = bias[o] + sum_{c,j} w[o,c,j] * x[b,c,t+j]
// Weights are stored out_ch x in_ch x kernel.

struct ConvParams {
  std::size_t in_channels = 0;
  std::size_t out_channels = 0;
  std::size_t kernel = 0;
  std::vector<double> weight;
  std::vector<double> bias;

  ConvParams() = default;
  ConvParams(std::size_t in_ch, std::size_t out_ch, std::size_t k)
      : in_channels(in_ch), out_channels(out_ch), kernel(k), weight(out_ch * in_ch * k, 0.0),
        bias(out_ch, 0.0) {}

  double& w(std::size_t o, std::size_t c, std::size_t j) {
    return weight[(o * in_channels + c) * kernel + j];
  }
  double w(std::size_t o, std::size_t c, std::size_t j) const {
    return weight[(o * in_channels + c) * kernel + j];
  }
};

struct ConvGrads {
  Tensor grad_input;
  std::vector<double> grad_weight;
  std::vector<double> grad_bias;
};

Tensor conv1d_forward(const Tensor& x, const ConvParams& p);
/// With `want_input_grad` false, grad_input is a 1x1x1 placeholder.
ConvGrads conv1d_backward(const Tensor& x, const ConvParams& p, const Tensor& grad_out,
                          bool want_input_grad = true);

// ---------------------------------------------------------------------------
// ReLU. The derivative at exactly 0 is taken as 0.

Tensor relu_forward(const Tensor& x);
Tensor relu_backward(const Tensor& x, const Tensor& grad_out);

// ---------------------------------------------------------------------------
// Batch normalization
//
// Statistics are per channel, pooled over batch and time. Train mode uses
// the biased batch variance for normalization and folds the unbiased variance
// into the running estimate:
//   running <- (1 - momentum) * running + momentum * batch_stat

struct BatchNormParams {
  std::size_t channels = 0;
  std::vector<double> gamma;
  std::vector<double> beta;
  std::vector<double> running_mean;
  std::vector<double> running_var;
  double epsilon = 1e-5;
  double momentum = 0.1;

  BatchNormParams() = default;
  explicit BatchNormParams(std::size_t ch)
      : channels(ch), gamma(ch, 1.0), beta(ch, 0.0), running_mean(ch, 0.0), running_var(ch, 1.0) {}
};

struct BatchNormCache {
  Tensor normalized;  // x_hat
  std::vector<double> inv_std;
  std::vector<double> batch_mean;
  std::vector<double> batch_var_unbiased;
};

struct BatchNormGrads {
  Tensor grad_input;
  std::vector<double> grad_gamma;
  std::vector<double> grad_beta;
};

/// Train mode normalizes with batch statistics and requires batch * length >= 2;
/// infer mode uses the running statistics. `cache`, when given, receives the
/// batch statistics and what the backward pass needs.
Tensor batchnorm_forward(const Tensor& x, const BatchNormParams& p, Mode mode,
                         BatchNormCache* cache = nullptr);

/// Folds the batch statistics of a train-mode forward pass into `p`.
void batchnorm_update_running(BatchNormParams& p, const BatchNormCache& cache);
BatchNormGrads batchnorm_backward(const Tensor& grad_out, const BatchNormParams& p,
                                  const BatchNormCache& cache);

// ---------------------------------------------------------------------------
// Pooling

std::size_t pooled_length(std::size_t length, std::size_t pool, std::size_t stride);

Tensor avgpool_forward(const Tensor& x, std::size_t pool, std::size_t stride);
Tensor avgpool_backward(const Tensor& grad_out, std::size_t input_length, std::size_t pool,
                        std::size_t stride);

/// (batch, channels, L) -> (batch, channels, 1).
Tensor global_avg_pool_forward(const Tensor& x);
Tensor global_avg_pool_backward(const Tensor& grad_out, std::size_t input_length);

// ---------------------------------------------------------------------------
// Output

std::vector<double> softmax(std::span<const double> logits);

/// -ln(max(p[true_class], 1e-12)).
double cross_entropy(std::span<const double> probabilities, std::size_t true_class);

/// Gradient of cross_entropy(softmax(z)) with respect to z: p - onehot.
std::vector<double> softmax_cross_entropy_grad(std::span<const double> probabilities,
                                               std::size_t true_class);

}  // namespace seizcnn::nn
