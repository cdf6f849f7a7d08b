#include "seizcnn/nn/layers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "seizcnn/error.hpp"

namespace seizcnn::nn {

namespace {

void check_conv_input(const Tensor& x, const ConvParams& p) {
  if (p.kernel == 0) throw_data_error("conv kernel must be >= 1");
  if (x.channels() != p.in_channels) {
    throw_data_error("conv expects " + std::to_string(p.in_channels) + " input channels, got " +
                     std::to_string(x.channels()));
  }
  if (x.length() < p.kernel) {
    throw_data_error("conv input length " + std::to_string(x.length()) + " shorter than kernel " +
                     std::to_string(p.kernel));
  }
}

}  // namespace

Tensor conv1d_forward(const Tensor& x, const ConvParams& p) {
  check_conv_input(x, p);
  const std::size_t out_len = x.length() - p.kernel + 1;
  Tensor out(x.batch(), p.out_channels, out_len);
  for (std::size_t b = 0; b < x.batch(); ++b) {
    for (std::size_t o = 0; o < p.out_channels; ++o) {
      double* __restrict dst = out.row(b, o).data();
      std::fill(dst, dst + out_len, p.bias[o]);
      for (std::size_t c = 0; c < p.in_channels; ++c) {
        const double* __restrict src = x.row(b, c).data();
        for (std::size_t j = 0; j < p.kernel; ++j) {
          const double w = p.w(o, c, j);
          const double* __restrict s = src + j;
          for (std::size_t t = 0; t < out_len; ++t) dst[t] += w * s[t];
        }
      }
    }
  }
  return out;
}

namespace {

// Dot product with eight independent partial sums so the loop vectorizes
// without reassociation flags; the summation order is fixed.
double dot(const double* __restrict a, const double* __restrict b, std::size_t n) {
  double acc[8] = {};
  std::size_t t = 0;
  for (; t + 8 <= n; t += 8) {
    for (std::size_t l = 0; l < 8; ++l) acc[l] += a[t + l] * b[t + l];
  }
  double tail = 0.0;
  for (; t < n; ++t) tail += a[t] * b[t];
  return ((acc[0] + acc[4]) + (acc[1] + acc[5])) + ((acc[2] + acc[6]) + (acc[3] + acc[7])) + tail;
}

}  // namespace

ConvGrads conv1d_backward(const Tensor& x, const ConvParams& p, const Tensor& grad_out,
                          bool want_input_grad) {
  check_conv_input(x, p);
  const std::size_t out_len = x.length() - p.kernel + 1;
  if (grad_out.batch() != x.batch() || grad_out.channels() != p.out_channels ||
      grad_out.length() != out_len) {
    throw_data_error("conv backward: grad_out shape " + grad_out.shape_string() +
                     " does not match forward output");
  }
  ConvGrads g{want_input_grad ? Tensor(x.batch(), x.channels(), x.length()) : Tensor(1, 1, 1),
              std::vector<double>(p.weight.size(), 0.0), std::vector<double>(p.out_channels, 0.0)};
  for (std::size_t b = 0; b < x.batch(); ++b) {
    for (std::size_t o = 0; o < p.out_channels; ++o) {
      const double* __restrict go = grad_out.row(b, o).data();
      double bias_sum = 0.0;
      for (std::size_t t = 0; t < out_len; ++t) bias_sum += go[t];
      g.grad_bias[o] += bias_sum;
      for (std::size_t c = 0; c < p.in_channels; ++c) {
        const double* __restrict src = x.row(b, c).data();
        for (std::size_t j = 0; j < p.kernel; ++j) {
          g.grad_weight[(o * p.in_channels + c) * p.kernel + j] += dot(go, src + j, out_len);
        }
        if (!want_input_grad) continue;
        double* __restrict gx = g.grad_input.row(b, c).data();
        for (std::size_t j = 0; j < p.kernel; ++j) {
          const double w = p.w(o, c, j);
          double* __restrict d = gx + j;
          for (std::size_t t = 0; t < out_len; ++t) d[t] += w * go[t];
        }
      }
    }
  }
  return g;
}

Tensor relu_forward(const Tensor& x) {
  Tensor out = x;
  for (double& v : out.values()) v = v > 0.0 ? v : 0.0;
  return out;
}

Tensor relu_backward(const Tensor& x, const Tensor& grad_out) {
  if (!x.same_shape(grad_out)) throw_data_error("relu backward: shape mismatch");
  Tensor g = grad_out;
  auto xs = x.values();
  auto gs = g.values();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (!(xs[i] > 0.0)) gs[i] = 0.0;
  }
  return g;
}

Tensor batchnorm_forward(const Tensor& x, const BatchNormParams& p, Mode mode,
                         BatchNormCache* cache) {
  if (x.channels() != p.channels) {
    throw_data_error("batchnorm expects " + std::to_string(p.channels) + " channels, got " +
                     std::to_string(x.channels()));
  }
  const std::size_t n = x.batch() * x.length();
  Tensor out(x.batch(), x.channels(), x.length());
  if (cache != nullptr) {
    cache->normalized = Tensor(x.batch(), x.channels(), x.length());
    cache->inv_std.assign(p.channels, 0.0);
    cache->batch_mean.assign(p.channels, 0.0);
    cache->batch_var_unbiased.assign(p.channels, 0.0);
  }

  for (std::size_t c = 0; c < p.channels; ++c) {
    double mean = 0.0;
    double var = 0.0;
    if (mode == Mode::train) {
      if (n < 2) throw_numeric_error("batchnorm train mode needs at least 2 values per channel");
      for (std::size_t b = 0; b < x.batch(); ++b) {
        for (double v : x.row(b, c)) mean += v;
      }
      mean /= static_cast<double>(n);
      for (std::size_t b = 0; b < x.batch(); ++b) {
        for (double v : x.row(b, c)) var += (v - mean) * (v - mean);
      }
      if (cache != nullptr) {
        cache->batch_mean[c] = mean;
        cache->batch_var_unbiased[c] = var / static_cast<double>(n - 1);
      }
      var /= static_cast<double>(n);
    } else {
      mean = p.running_mean[c];
      var = p.running_var[c];
    }
    const double inv_std = 1.0 / std::sqrt(var + p.epsilon);
    if (cache != nullptr) cache->inv_std[c] = inv_std;
    for (std::size_t b = 0; b < x.batch(); ++b) {
      auto src = x.row(b, c);
      auto dst = out.row(b, c);
      for (std::size_t t = 0; t < src.size(); ++t) {
        const double xh = (src[t] - mean) * inv_std;
        if (cache != nullptr) cache->normalized(b, c, t) = xh;
        dst[t] = p.gamma[c] * xh + p.beta[c];
      }
    }
  }
  return out;
}

void batchnorm_update_running(BatchNormParams& p, const BatchNormCache& cache) {
  if (cache.batch_mean.size() != p.channels) {
    throw_data_error("batchnorm running update: cache holds no train-mode statistics");
  }
  for (std::size_t c = 0; c < p.channels; ++c) {
    p.running_mean[c] = (1.0 - p.momentum) * p.running_mean[c] + p.momentum * cache.batch_mean[c];
    p.running_var[c] =
        (1.0 - p.momentum) * p.running_var[c] + p.momentum * cache.batch_var_unbiased[c];
  }
}

BatchNormGrads batchnorm_backward(const Tensor& grad_out, const BatchNormParams& p,
                                  const BatchNormCache& cache) {
  const Tensor& xh = cache.normalized;
  if (!xh.same_shape(grad_out)) throw_data_error("batchnorm backward: shape mismatch");
  const double n = static_cast<double>(grad_out.batch() * grad_out.length());
  BatchNormGrads g{Tensor(grad_out.batch(), grad_out.channels(), grad_out.length()),
                   std::vector<double>(p.channels, 0.0), std::vector<double>(p.channels, 0.0)};
  for (std::size_t c = 0; c < p.channels; ++c) {
    double sum_dy = 0.0;
    double sum_dy_xh = 0.0;
    for (std::size_t b = 0; b < grad_out.batch(); ++b) {
      auto dy = grad_out.row(b, c);
      auto xr = xh.row(b, c);
      for (std::size_t t = 0; t < dy.size(); ++t) {
        sum_dy += dy[t];
        sum_dy_xh += dy[t] * xr[t];
      }
    }
    g.grad_beta[c] = sum_dy;
    g.grad_gamma[c] = sum_dy_xh;
    const double scale = p.gamma[c] * cache.inv_std[c] / n;
    for (std::size_t b = 0; b < grad_out.batch(); ++b) {
      auto dy = grad_out.row(b, c);
      auto xr = xh.row(b, c);
      auto dx = g.grad_input.row(b, c);
      for (std::size_t t = 0; t < dy.size(); ++t) {
        dx[t] = scale * (n * dy[t] - sum_dy - xr[t] * sum_dy_xh);
      }
    }
  }
  return g;
}

std::size_t pooled_length(std::size_t length, std::size_t pool, std::size_t stride) {
  if (pool == 0 || stride == 0) throw_data_error("pool size and stride must be >= 1");
  if (length < pool) {
    throw_data_error("pool size " + std::to_string(pool) + " exceeds input length " +
                     std::to_string(length));
  }
  return (length - pool) / stride + 1;
}

Tensor avgpool_forward(const Tensor& x, std::size_t pool, std::size_t stride) {
  const std::size_t out_len = pooled_length(x.length(), pool, stride);
  Tensor out(x.batch(), x.channels(), out_len);
  const double inv = 1.0 / static_cast<double>(pool);
  for (std::size_t b = 0; b < x.batch(); ++b) {
    for (std::size_t c = 0; c < x.channels(); ++c) {
      auto src = x.row(b, c);
      auto dst = out.row(b, c);
      for (std::size_t t = 0; t < out_len; ++t) {
        double s = 0.0;
        for (std::size_t j = 0; j < pool; ++j) s += src[t * stride + j];
        dst[t] = s * inv;
      }
    }
  }
  return out;
}

Tensor avgpool_backward(const Tensor& grad_out, std::size_t input_length, std::size_t pool,
                        std::size_t stride) {
  const std::size_t out_len = pooled_length(input_length, pool, stride);
  if (grad_out.length() != out_len) throw_data_error("avgpool backward: shape mismatch");
  Tensor g(grad_out.batch(), grad_out.channels(), input_length);
  const double inv = 1.0 / static_cast<double>(pool);
  for (std::size_t b = 0; b < grad_out.batch(); ++b) {
    for (std::size_t c = 0; c < grad_out.channels(); ++c) {
      auto go = grad_out.row(b, c);
      auto dst = g.row(b, c);
      for (std::size_t t = 0; t < out_len; ++t) {
        for (std::size_t j = 0; j < pool; ++j) dst[t * stride + j] += go[t] * inv;
      }
    }
  }
  return g;
}

Tensor global_avg_pool_forward(const Tensor& x) {
  Tensor out(x.batch(), x.channels(), 1);
  const double inv = 1.0 / static_cast<double>(x.length());
  for (std::size_t b = 0; b < x.batch(); ++b) {
    for (std::size_t c = 0; c < x.channels(); ++c) {
      double s = 0.0;
      for (double v : x.row(b, c)) s += v;
      out(b, c, 0) = s * inv;
    }
  }
  return out;
}

Tensor global_avg_pool_backward(const Tensor& grad_out, std::size_t input_length) {
  if (grad_out.length() != 1) throw_data_error("global pool backward expects length-1 gradient");
  Tensor g(grad_out.batch(), grad_out.channels(), input_length);
  const double inv = 1.0 / static_cast<double>(input_length);
  for (std::size_t b = 0; b < grad_out.batch(); ++b) {
    for (std::size_t c = 0; c < grad_out.channels(); ++c) {
      auto dst = g.row(b, c);
      std::fill(dst.begin(), dst.end(), grad_out(b, c, 0) * inv);
    }
  }
  return g;
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double top = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (double& v : p) {
    v = std::exp(v - top);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

double cross_entropy(std::span<const double> probabilities, std::size_t true_class) {
  if (true_class >= probabilities.size()) throw_data_error("cross_entropy: class out of range");
  return -std::log(std::max(probabilities[true_class], 1e-12));
}

std::vector<double> softmax_cross_entropy_grad(std::span<const double> probabilities,
                                               std::size_t true_class) {
  if (true_class >= probabilities.size()) throw_data_error("cross_entropy: class out of range");
  std::vector<double> g(probabilities.begin(), probabilities.end());
  g[true_class] -= 1.0;
  return g;
}

}  // namespace seizcnn::nn
