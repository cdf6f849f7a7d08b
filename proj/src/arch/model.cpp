#include "seizcnn/arch/model.hpp"

#include <algorithm>
#include <cmath>

#include "seizcnn/arch/analysis.hpp"
#include "seizcnn/error.hpp"
#include "seizcnn/random.hpp"

namespace seizcnn::arch {

namespace {

void check_state(const NetworkSpec& spec, const std::vector<LayerState>& layers) {
  if (layers.size() != spec.layers.size()) {
    throw_data_error("model has " + std::to_string(layers.size()) + " layer states for " +
                     std::to_string(spec.layers.size()) + " layers");
  }
  std::size_t channels = spec.input.channels;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const std::string where = "layer " + std::to_string(i) + ": ";
    if (const auto* c = std::get_if<Conv>(&spec.layers[i])) {
      const auto* p = std::get_if<nn::ConvParams>(&layers[i]);
      if (p == nullptr || p->in_channels != channels || p->out_channels != c->out_channels ||
          p->kernel != c->kernel || p->weight.size() != c->out_channels * channels * c->kernel ||
          p->bias.size() != c->out_channels) {
        throw_data_error(where + "conv parameters disagree with the network spec");
      }
      channels = c->out_channels;
    } else if (const auto* bn = std::get_if<BatchNorm>(&spec.layers[i])) {
      const auto* p = std::get_if<nn::BatchNormParams>(&layers[i]);
      if (p == nullptr || p->channels != bn->channels || p->gamma.size() != bn->channels ||
          p->beta.size() != bn->channels || p->running_mean.size() != bn->channels ||
          p->running_var.size() != bn->channels) {
        throw_data_error(where + "batchnorm parameters disagree with the network spec");
      }
    } else if (!std::holds_alternative<std::monostate>(layers[i])) {
      throw_data_error(where + "parameterless layer carries parameters");
    }
  }
}

nn::Tensor softmax_rows(const nn::Tensor& logits) {
  nn::Tensor probs(logits.batch(), logits.channels(), 1);
  std::vector<double> z(logits.channels());
  for (std::size_t b = 0; b < logits.batch(); ++b) {
    for (std::size_t c = 0; c < logits.channels(); ++c) z[c] = logits(b, c, 0);
    const auto p = nn::softmax(z);
    for (std::size_t c = 0; c < logits.channels(); ++c) probs(b, c, 0) = p[c];
  }
  return probs;
}

}  // namespace

Model::Model(NetworkSpec spec, std::vector<LayerState> layers)
    : spec_(std::move(spec)), layers_(std::move(layers)) {
  spec_.validate();
  check_state(spec_, layers_);
}

nn::Tensor Model::predict(const nn::Tensor& x) const {
  if (x.channels() != spec_.input.channels || x.length() != spec_.input.length) {
    throw_data_error("model " + spec_.name + " expects inputs of " +
                     std::to_string(spec_.input.channels) + "x" +
                     std::to_string(spec_.input.length) + ", got " + x.shape_string());
  }
  nn::Tensor cur = x;
  for (std::size_t i = 0; i < spec_.layers.size(); ++i) {
    const auto& layer = spec_.layers[i];
    if (is_conv(layer)) {
      cur = nn::conv1d_forward(cur, std::get<nn::ConvParams>(layers_[i]));
    } else if (std::holds_alternative<Relu>(layer)) {
      for (double& v : cur.values()) v = v > 0.0 ? v : 0.0;
    } else if (std::holds_alternative<BatchNorm>(layer)) {
      cur = nn::batchnorm_forward(cur, std::get<nn::BatchNormParams>(layers_[i]), nn::Mode::infer);
    } else if (const auto* p = std::get_if<AvgPool>(&layer)) {
      cur = nn::avgpool_forward(cur, p->pool, p->stride);
    } else if (std::holds_alternative<GlobalAvgPool>(layer)) {
      cur = nn::global_avg_pool_forward(cur);
    } else {
      cur = softmax_rows(cur);
    }
  }
  return cur;
}

std::vector<double> Model::seizure_probability(std::span<const double> windows,
                                               std::size_t chunk) const {
  const std::size_t len = spec_.input.length * spec_.input.channels;
  if (windows.size() % len != 0) {
    throw_data_error("window buffer size is not a multiple of the model input size");
  }
  const std::size_t n = windows.size() / len;
  std::vector<double> out;
  out.reserve(n);
  chunk = std::max<std::size_t>(chunk, 1);
  for (std::size_t start = 0; start < n; start += chunk) {
    const std::size_t m = std::min(chunk, n - start);
    nn::Tensor x(m, spec_.input.channels, spec_.input.length);
    std::copy_n(windows.begin() + static_cast<std::ptrdiff_t>(start * len), m * len,
                x.values().begin());
    const auto probs = predict(x);
    for (std::size_t b = 0; b < m; ++b) out.push_back(probs(b, 1, 0));
  }
  return out;
}

double Model::loss_and_gradients(const nn::Tensor& x, std::span<const int> labels,
                                 Gradients& grads, bool update_running_stats,
                                 std::vector<double>* probs_out) {
  if (labels.size() != x.batch()) throw_data_error("label count differs from batch size");
  const std::size_t n_layers = spec_.layers.size();
  std::vector<nn::Tensor> inputs(n_layers);
  std::vector<nn::BatchNormCache> bn_cache(n_layers);

  nn::Tensor cur = x;
  // The trailing softmax is folded into the loss gradient.
  for (std::size_t i = 0; i + 1 < n_layers; ++i) {
    const auto& layer = spec_.layers[i];
    inputs[i] = cur;
    if (is_conv(layer)) {
      cur = nn::conv1d_forward(cur, std::get<nn::ConvParams>(layers_[i]));
    } else if (std::holds_alternative<Relu>(layer)) {
      cur = nn::relu_forward(cur);
    } else if (std::holds_alternative<BatchNorm>(layer)) {
      auto& p = std::get<nn::BatchNormParams>(layers_[i]);
      cur = nn::batchnorm_forward(cur, p, nn::Mode::train, &bn_cache[i]);
      if (update_running_stats) nn::batchnorm_update_running(p, bn_cache[i]);
    } else if (const auto* p = std::get_if<AvgPool>(&layer)) {
      cur = nn::avgpool_forward(cur, p->pool, p->stride);
    } else if (std::holds_alternative<GlobalAvgPool>(layer)) {
      cur = nn::global_avg_pool_forward(cur);
    }
  }

  const std::size_t batch = x.batch();
  const std::size_t classes = cur.channels();
  nn::Tensor grad(batch, classes, 1);
  double loss = 0.0;
  std::vector<double> z(classes);
  if (probs_out != nullptr) probs_out->assign(batch * classes, 0.0);
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t c = 0; c < classes; ++c) z[c] = cur(b, c, 0);
    const auto p = nn::softmax(z);
    const auto cls = static_cast<std::size_t>(labels[b]);
    if (labels[b] < 0 || cls >= classes) throw_data_error("label out of range");
    loss += nn::cross_entropy(p, cls);
    const auto g = nn::softmax_cross_entropy_grad(p, cls);
    for (std::size_t c = 0; c < classes; ++c) {
      grad(b, c, 0) = g[c] / static_cast<double>(batch);
      if (probs_out != nullptr) (*probs_out)[b * classes + c] = p[c];
    }
  }
  loss /= static_cast<double>(batch);

  // Trainable blocks in forward order; filled back to front.
  std::vector<std::size_t> block_of_layer(n_layers, 0);
  std::size_t n_blocks = 0;
  for (std::size_t i = 0; i < n_layers; ++i) {
    block_of_layer[i] = n_blocks;
    if (is_conv(spec_.layers[i]) || std::holds_alternative<BatchNorm>(spec_.layers[i])) {
      n_blocks += 2;
    }
  }
  grads.assign(n_blocks, {});

  for (std::size_t i = n_layers - 1; i-- > 0;) {
    const auto& layer = spec_.layers[i];
    if (is_conv(layer)) {
      auto g = nn::conv1d_backward(inputs[i], std::get<nn::ConvParams>(layers_[i]), grad, i > 0);
      grads[block_of_layer[i]] = std::move(g.grad_weight);
      grads[block_of_layer[i] + 1] = std::move(g.grad_bias);
      grad = std::move(g.grad_input);
    } else if (std::holds_alternative<Relu>(layer)) {
      grad = nn::relu_backward(inputs[i], grad);
    } else if (std::holds_alternative<BatchNorm>(layer)) {
      auto g = nn::batchnorm_backward(grad, std::get<nn::BatchNormParams>(layers_[i]), bn_cache[i]);
      grads[block_of_layer[i]] = std::move(g.grad_gamma);
      grads[block_of_layer[i] + 1] = std::move(g.grad_beta);
      grad = std::move(g.grad_input);
    } else if (const auto* p = std::get_if<AvgPool>(&layer)) {
      grad = nn::avgpool_backward(grad, inputs[i].length(), p->pool, p->stride);
    } else if (std::holds_alternative<GlobalAvgPool>(layer)) {
      grad = nn::global_avg_pool_backward(grad, inputs[i].length());
    }
  }
  return loss;
}

std::vector<ParamBlock> Model::param_blocks() {
  std::vector<ParamBlock> blocks;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const std::string prefix = "layer" + std::to_string(i) + ".";
    if (auto* c = std::get_if<nn::ConvParams>(&layers_[i])) {
      blocks.push_back({prefix + "weight", {c->out_channels, c->in_channels, c->kernel}, c->weight, true});
      blocks.push_back({prefix + "bias", {c->out_channels}, c->bias, true});
    } else if (auto* bn = std::get_if<nn::BatchNormParams>(&layers_[i])) {
      blocks.push_back({prefix + "gamma", {bn->channels}, bn->gamma, true});
      blocks.push_back({prefix + "beta", {bn->channels}, bn->beta, true});
      blocks.push_back({prefix + "running_mean", {bn->channels}, bn->running_mean, false});
      blocks.push_back({prefix + "running_var", {bn->channels}, bn->running_var, false});
    }
  }
  return blocks;
}

std::vector<ConstParamBlock> Model::param_blocks() const {
  std::vector<ConstParamBlock> out;
  for (auto& b : const_cast<Model*>(this)->param_blocks()) {
    out.push_back({b.name, b.shape, b.values, b.trainable});
  }
  return out;
}

std::size_t Model::value_count() const {
  std::size_t n = 0;
  for (const auto& b : param_blocks()) n += b.values.size();
  return n;
}

void Model::round_to_float() {
  for (auto& b : param_blocks()) {
    for (double& v : b.values) v = static_cast<double>(static_cast<float>(v));
  }
}

Model assemble(const NetworkSpec& spec, std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);
  std::vector<LayerState> layers;
  std::size_t channels = spec.input.channels;
  for (const auto& layer : spec.layers) {
    if (const auto* c = std::get_if<Conv>(&layer)) {
      nn::ConvParams p(channels, c->out_channels, c->kernel);
      const double bound = std::sqrt(6.0 / static_cast<double>(channels * c->kernel));
      for (double& w : p.weight) w = rng.uniform(-bound, bound);
      layers.emplace_back(std::move(p));
      channels = c->out_channels;
    } else if (const auto* bn = std::get_if<BatchNorm>(&layer)) {
      layers.emplace_back(nn::BatchNormParams(bn->channels));
    } else {
      layers.emplace_back(std::monostate{});
    }
  }
  return Model(spec, std::move(layers));
}

SgdMomentum::SgdMomentum(const Model& model, nn::OptimizerConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  for (const auto& b : model.param_blocks()) {
    if (b.trainable) velocity_.emplace_back(b.values.size(), 0.0);
  }
}

void SgdMomentum::step(Model& model, const Gradients& grads) {
  if (grads.size() != velocity_.size()) throw_data_error("gradient block count mismatch");
  std::size_t k = 0;
  for (auto& b : model.param_blocks()) {
    if (!b.trainable) continue;
    nn::sgd_momentum_step(b.values, grads[k], velocity_[k], cfg_);
    ++k;
  }
}

}  // namespace seizcnn::arch
