#include "seizcnn/eegio/model_io.hpp"

#include <fstream>

#include "json.hpp"

#include "seizcnn/eegio/binary.hpp"
#include "seizcnn/error.hpp"

namespace seizcnn::eegio {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "seizcnn-model";
constexpr int kVersion = 1;

json layer_to_json(const arch::LayerDesc& layer, const arch::LayerState& state) {
  json j = {{"type", arch::layer_kind(layer)}};
  if (const auto* c = std::get_if<arch::Conv>(&layer)) {
    j["out_channels"] = c->out_channels;
    j["kernel"] = c->kernel;
  } else if (const auto* bn = std::get_if<arch::BatchNorm>(&layer)) {
    const auto& p = std::get<nn::BatchNormParams>(state);
    j["channels"] = bn->channels;
    j["epsilon"] = p.epsilon;
    j["momentum"] = p.momentum;
  } else if (const auto* pool = std::get_if<arch::AvgPool>(&layer)) {
    j["pool"] = pool->pool;
    j["stride"] = pool->stride;
  }
  return j;
}

arch::LayerDesc layer_from_json(const json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "conv") return arch::Conv{j.at("out_channels").get<std::size_t>(), j.at("kernel").get<std::size_t>()};
  if (type == "relu") return arch::Relu{};
  if (type == "batchnorm") return arch::BatchNorm{j.at("channels").get<std::size_t>()};
  if (type == "avgpool") return arch::AvgPool{j.at("pool").get<std::size_t>(), j.at("stride").get<std::size_t>()};
  if (type == "global_avg_pool") return arch::GlobalAvgPool{};
  if (type == "softmax") return arch::Softmax{};
  throw_data_error("unknown layer type '" + type + "' in manifest");
}

void write_manifest(const std::filesystem::path& stem, const json& manifest) {
  std::ofstream out(manifest_path(stem), std::ios::trunc);
  if (!out) throw_data_error("cannot write " + manifest_path(stem).string());
  out << manifest.dump(2) << "\n";
}

json read_manifest(const std::filesystem::path& stem) {
  std::ifstream in(manifest_path(stem));
  if (!in) throw_data_error("cannot open " + manifest_path(stem).string());
  json manifest;
  try {
    manifest = json::parse(in);
  } catch (const json::exception& e) {
    throw_data_error("malformed manifest " + manifest_path(stem).string() + ": " + e.what());
  }
  if (manifest.value("format", "") != kFormat || manifest.value("version", 0) != kVersion) {
    throw_data_error(manifest_path(stem).string() + ": not a seizcnn model manifest");
  }
  return manifest;
}

std::vector<float> read_blob(const std::filesystem::path& stem, std::size_t expected) {
  const auto path = weights_path(stem);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_data_error("cannot open " + path.string());
  const auto bytes = std::filesystem::file_size(path);
  if (bytes != expected * 4) {
    throw_data_error(path.string() + ": manifest lists " + std::to_string(expected) +
                     " values, weight blob holds " + std::to_string(bytes) + " bytes");
  }
  return read_f32_le(in, expected);
}

void write_blob(const std::filesystem::path& stem, const std::vector<double>& values) {
  std::ofstream out(weights_path(stem), std::ios::binary | std::ios::trunc);
  if (!out) throw_data_error("cannot write " + weights_path(stem).string());
  write_f32_le(out, values);
  if (!out) throw_data_error("write failed: " + weights_path(stem).string());
}

}  // namespace

std::filesystem::path manifest_path(const std::filesystem::path& stem) {
  return std::filesystem::path(stem.string() + ".manifest.json");
}

std::filesystem::path weights_path(const std::filesystem::path& stem) {
  return std::filesystem::path(stem.string() + ".weights");
}

void save_model(const arch::Model& model, const std::filesystem::path& stem) {
  const auto& spec = model.spec();
  json layers = json::array();
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    layers.push_back(layer_to_json(spec.layers[i], model.layers()[i]));
  }
  json params = json::array();
  std::vector<double> values;
  for (const auto& b : model.param_blocks()) {
    params.push_back({{"name", b.name}, {"shape", b.shape}});
    values.insert(values.end(), b.values.begin(), b.values.end());
  }
  json manifest = {{"format", kFormat},
                   {"version", kVersion},
                   {"kind", "cnn"},
                   {"name", spec.name},
                   {"input", {{"channels", spec.input.channels}, {"length", spec.input.length}}},
                   {"layers", layers},
                   {"params", params},
                   {"value_count", values.size()}};
  write_manifest(stem, manifest);
  write_blob(stem, values);
}

arch::Model load_model(const std::filesystem::path& stem) {
  const json manifest = read_manifest(stem);
  if (manifest.value("kind", "") != "cnn") {
    throw_data_error(manifest_path(stem).string() + ": not a CNN model");
  }
  arch::NetworkSpec spec;
  std::vector<json> layer_json;
  std::size_t declared = 0;
  try {
    spec.name = manifest.at("name").get<std::string>();
    spec.input.channels = manifest.at("input").at("channels").get<std::size_t>();
    spec.input.length = manifest.at("input").at("length").get<std::size_t>();
    for (const auto& l : manifest.at("layers")) {
      spec.layers.push_back(layer_from_json(l));
      layer_json.push_back(l);
    }
    declared = manifest.at("value_count").get<std::size_t>();
  } catch (const json::exception& e) {
    throw_data_error("malformed manifest " + manifest_path(stem).string() + ": " + e.what());
  }

  arch::Model model = arch::assemble(spec, 0);
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    if (auto* bn = std::get_if<nn::BatchNormParams>(&model.layers()[i])) {
      bn->epsilon = layer_json[i].value("epsilon", bn->epsilon);
      bn->momentum = layer_json[i].value("momentum", bn->momentum);
    }
  }
  auto blocks = model.param_blocks();
  const auto& listed = manifest.at("params");
  if (listed.size() != blocks.size()) {
    throw_data_error(manifest_path(stem).string() + ": parameter list disagrees with the layers");
  }
  std::size_t total = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (listed[k].value("name", "") != blocks[k].name ||
        listed[k].at("shape").get<std::vector<std::size_t>>() != blocks[k].shape) {
      throw_data_error(manifest_path(stem).string() + ": parameter block " + blocks[k].name +
                       " has a shape that disagrees with the layers");
    }
    total += blocks[k].values.size();
  }
  if (total != declared) {
    throw_data_error(manifest_path(stem).string() + ": value_count disagrees with the shapes");
  }
  const auto blob = read_blob(stem, total);
  std::size_t pos = 0;
  for (auto& b : blocks) {
    for (double& v : b.values) v = static_cast<double>(blob[pos++]);
  }
  return model;
}

void round_to_float(shallow::BaselineModel& m) {
  auto r = [](double& v) { v = static_cast<double>(static_cast<float>(v)); };
  for (auto& v : m.feature_mean) r(v);
  for (auto& v : m.feature_scale) r(v);
  for (auto& v : m.weights) r(v);
  r(m.bias);
}

void save_baseline(const shallow::BaselineModel& model, const std::filesystem::path& stem) {
  constexpr auto n = shallow::kFeatureCount;
  std::vector<std::string> names(shallow::kFeatureNames.begin(), shallow::kFeatureNames.end());
  json params = json::array({{{"name", "feature_mean"}, {"shape", {n}}},
                             {{"name", "feature_scale"}, {"shape", {n}}},
                             {{"name", "weights"}, {"shape", {n}}},
                             {{"name", "bias"}, {"shape", {1}}}});
  std::vector<double> values;
  values.insert(values.end(), model.feature_mean.begin(), model.feature_mean.end());
  values.insert(values.end(), model.feature_scale.begin(), model.feature_scale.end());
  values.insert(values.end(), model.weights.begin(), model.weights.end());
  values.push_back(model.bias);
  json manifest = {{"format", kFormat}, {"version", kVersion}, {"kind", "logistic"},
                   {"name", "baseline"}, {"features", names},  {"l2", model.l2},
                   {"params", params},  {"value_count", values.size()}};
  write_manifest(stem, manifest);
  write_blob(stem, values);
}

shallow::BaselineModel load_baseline(const std::filesystem::path& stem) {
  const json manifest = read_manifest(stem);
  if (manifest.value("kind", "") != "logistic") {
    throw_data_error(manifest_path(stem).string() + ": not a baseline model");
  }
  constexpr auto n = shallow::kFeatureCount;
  std::vector<std::string> names(shallow::kFeatureNames.begin(), shallow::kFeatureNames.end());
  if (manifest.value("features", std::vector<std::string>{}) != names ||
      manifest.value("value_count", std::size_t{0}) != 3 * n + 1) {
    throw_data_error(manifest_path(stem).string() + ": feature list or shapes disagree");
  }
  const auto blob = read_blob(stem, 3 * n + 1);
  shallow::BaselineModel m;
  m.l2 = manifest.value("l2", m.l2);
  for (std::size_t j = 0; j < n; ++j) {
    m.feature_mean[j] = blob[j];
    m.feature_scale[j] = blob[n + j];
    m.weights[j] = blob[2 * n + j];
  }
  m.bias = blob[3 * n];
  return m;
}

std::string model_kind(const std::filesystem::path& stem) {
  return read_manifest(stem).value("kind", "");
}

}  // namespace seizcnn::eegio
