#include "seizcnn/arch/network_spec.hpp"

#include "seizcnn/error.hpp"

namespace seizcnn::arch {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void add_conv(NetworkSpec& spec, std::size_t out_ch, std::size_t k) {
  spec.layers.emplace_back(Conv{out_ch, k});
  spec.layers.emplace_back(Relu{});
}

}  // namespace

std::size_t NetworkSpec::num_classes() const {
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    if (const auto* c = std::get_if<Conv>(&*it)) return c->out_channels;
  }
  return 0;
}

void NetworkSpec::validate() const {
  if (input.channels == 0 || input.length == 0) throw_data_error(name + ": empty input descriptor");
  std::size_t channels = input.channels;
  bool seen_conv = false;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& layer = layers[i];
    if (const auto* c = std::get_if<Conv>(&layer)) {
      if (c->kernel == 0 || c->out_channels == 0) {
        throw_data_error(name + ": layer " + std::to_string(i) + " conv has zero size");
      }
      channels = c->out_channels;
      seen_conv = true;
    } else if (const auto* bn = std::get_if<BatchNorm>(&layer)) {
      if (bn->channels != channels) {
        throw_data_error(name + ": layer " + std::to_string(i) + " batchnorm has " +
                         std::to_string(bn->channels) + " channels, input has " +
                         std::to_string(channels));
      }
    } else if (const auto* pool = std::get_if<AvgPool>(&layer)) {
      if (pool->pool == 0 || pool->stride == 0) {
        throw_data_error(name + ": layer " + std::to_string(i) + " pool has zero size");
      }
    }
  }
  if (!seen_conv) throw_data_error(name + ": network has no convolution");
  const std::size_t n = layers.size();
  if (n < 2 || !std::holds_alternative<Softmax>(layers[n - 1]) ||
      !std::holds_alternative<GlobalAvgPool>(layers[n - 2])) {
    throw_data_error(name + ": network must end with global average pooling and softmax");
  }
  if (num_classes() != 2) {
    throw_data_error(name + ": final convolution must produce 2 class maps");
  }
}

NetworkSpec build_cnn11() {
  NetworkSpec spec{"cnn11", {1, 256}, {}};
  const std::size_t pools[3][2] = {{8, 3}, {4, 3}, {2, 3}};
  for (const auto& p : pools) {
    for (int i = 0; i < 3; ++i) add_conv(spec, 32, 3);
    spec.layers.emplace_back(BatchNorm{32});
    spec.layers.emplace_back(AvgPool{p[0], p[1]});
  }
  add_conv(spec, 32, 3);
  add_conv(spec, 2, 3);
  spec.layers.emplace_back(GlobalAvgPool{});
  spec.layers.emplace_back(Softmax{});
  return spec;
}

NetworkSpec build_cnn6() {
  NetworkSpec spec{"cnn6", {1, 256}, {}};
  add_conv(spec, 32, 4);
  add_conv(spec, 32, 4);
  spec.layers.emplace_back(AvgPool{3, 2});
  add_conv(spec, 32, 4);
  add_conv(spec, 32, 4);
  spec.layers.emplace_back(BatchNorm{32});
  spec.layers.emplace_back(AvgPool{2, 2});
  add_conv(spec, 32, 4);
  add_conv(spec, 2, 4);
  spec.layers.emplace_back(GlobalAvgPool{});
  spec.layers.emplace_back(Softmax{});
  return spec;
}

NetworkSpec build_named(const std::string& name) {
  if (name == "cnn11") return build_cnn11();
  if (name == "cnn6") return build_cnn6();
  throw_usage_error("unknown architecture '" + name + "' (expected cnn11 or cnn6)");
}

std::string layer_kind(const LayerDesc& layer) {
  return std::visit(overloaded{[](const Conv&) { return std::string("conv"); },
                               [](const Relu&) { return std::string("relu"); },
                               [](const BatchNorm&) { return std::string("batchnorm"); },
                               [](const AvgPool&) { return std::string("avgpool"); },
                               [](const GlobalAvgPool&) { return std::string("global_avg_pool"); },
                               [](const Softmax&) { return std::string("softmax"); }},
                    layer);
}

std::string layer_description(const LayerDesc& layer) {
  return std::visit(
      overloaded{[](const Conv& c) {
                   return "1D Convolution " + std::to_string(c.out_channels) + " 1x" +
                          std::to_string(c.kernel) + " filters";
                 },
                 [](const Relu&) { return std::string("ReLU"); },
                 [](const BatchNorm&) { return std::string("Batch Norm."); },
                 [](const AvgPool& p) {
                   return "Average Pooling pool " + std::to_string(p.pool) + " stride " +
                          std::to_string(p.stride);
                 },
                 [](const GlobalAvgPool&) { return std::string("Global Average Pooling"); },
                 [](const Softmax&) { return std::string("Softmax"); }},
      layer);
}

bool is_conv(const LayerDesc& layer) { return std::holds_alternative<Conv>(layer); }

std::vector<std::size_t> conv_layer_indices(const NetworkSpec& spec) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    if (is_conv(spec.layers[i])) out.push_back(i);
  }
  return out;
}

}  // namespace seizcnn::arch
