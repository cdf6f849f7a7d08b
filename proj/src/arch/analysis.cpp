#include "seizcnn/arch/analysis.hpp"

#include <iomanip>

#include "seizcnn/error.hpp"

namespace seizcnn::arch {

std::vector<LayerShape> output_shapes(const NetworkSpec& spec, std::size_t input_length) {
  std::vector<LayerShape> shapes;
  shapes.reserve(spec.layers.size());
  LayerShape cur{spec.input.channels, input_length};
  auto fail = [&](std::size_t i, const std::string& why) {
    throw_data_error(spec.name + ": layer " + std::to_string(i) + " (" +
                     layer_description(spec.layers[i]) + "): " + why);
  };
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const auto& layer = spec.layers[i];
    if (const auto* c = std::get_if<Conv>(&layer)) {
      if (cur.length < c->kernel) {
        fail(i, "input length " + std::to_string(cur.length) + " < kernel " +
                    std::to_string(c->kernel));
      }
      cur = {c->out_channels, cur.length - c->kernel + 1};
    } else if (const auto* p = std::get_if<AvgPool>(&layer)) {
      if (cur.length < p->pool) {
        fail(i, "input length " + std::to_string(cur.length) + " < pool " +
                    std::to_string(p->pool));
      }
      cur.length = (cur.length - p->pool) / p->stride + 1;
    } else if (std::holds_alternative<GlobalAvgPool>(layer)) {
      cur.length = 1;
    }
    shapes.push_back(cur);
  }
  return shapes;
}

std::vector<std::size_t> layer_param_counts(const NetworkSpec& spec) {
  std::vector<std::size_t> counts;
  std::size_t channels = spec.input.channels;
  for (const auto& layer : spec.layers) {
    std::size_t n = 0;
    if (const auto* c = std::get_if<Conv>(&layer)) {
      n = c->out_channels * channels * c->kernel + c->out_channels;
      channels = c->out_channels;
    } else if (const auto* bn = std::get_if<BatchNorm>(&layer)) {
      n = 4 * bn->channels;
    }
    counts.push_back(n);
  }
  return counts;
}

std::size_t param_count(const NetworkSpec& spec) {
  std::size_t total = 0;
  for (std::size_t n : layer_param_counts(spec)) total += n;
  return total;
}

std::size_t trainable_param_count(const NetworkSpec& spec) {
  std::size_t total = param_count(spec);
  for (const auto& layer : spec.layers) {
    if (const auto* bn = std::get_if<BatchNorm>(&layer)) total -= 2 * bn->channels;
  }
  return total;
}

ReceptiveField receptive_field(const NetworkSpec& spec, std::size_t layer_index) {
  if (layer_index >= spec.layers.size()) {
    throw_data_error("receptive_field: layer index " + std::to_string(layer_index) +
                     " out of range for " + std::to_string(spec.layers.size()) + " layers");
  }
  ReceptiveField rf{1, 1};
  std::size_t length = spec.input.length;
  for (std::size_t i = 0; i <= layer_index; ++i) {
    const auto& layer = spec.layers[i];
    if (const auto* c = std::get_if<Conv>(&layer)) {
      rf.field += (c->kernel - 1) * rf.jump;
      length = length >= c->kernel ? length - c->kernel + 1 : 0;
    } else if (const auto* p = std::get_if<AvgPool>(&layer)) {
      rf.field += (p->pool - 1) * rf.jump;
      rf.jump *= p->stride;
      length = length >= p->pool ? (length - p->pool) / p->stride + 1 : 0;
    } else if (std::holds_alternative<GlobalAvgPool>(layer)) {
      if (length > 0) rf.field += (length - 1) * rf.jump;
      length = 1;
    }
  }
  return rf;
}

ArchReport analyze(const NetworkSpec& spec, std::size_t input_length) {
  NetworkSpec sized = spec;
  sized.input.length = input_length;
  const auto shapes = output_shapes(sized, input_length);
  const auto params = layer_param_counts(sized);
  ArchReport report{spec.name, input_length, {}, param_count(sized), 0};
  for (std::size_t i = 0; i < sized.layers.size(); ++i) {
    const auto rf = receptive_field(sized, i);
    report.rows.push_back({i, layer_kind(sized.layers[i]), layer_description(sized.layers[i]),
                           shapes[i], rf, params[i]});
    if (is_conv(sized.layers[i])) report.final_conv_receptive_field = rf.field;
  }
  return report;
}

namespace {

std::string shape_text(const ArchRow& row) {
  if (row.kind == "global_avg_pool" || row.kind == "softmax") {
    return std::to_string(row.shape.channels);
  }
  return std::to_string(row.shape.length) + "x" + std::to_string(row.shape.channels);
}

}  // namespace

void write_report_text(std::ostream& os, const ArchReport& report) {
  os << "network " << report.network << "  input " << report.input_length << "x1\n";
  os << std::left << std::setw(6) << "layer" << std::setw(36) << "type" << std::setw(10)
     << "output" << std::setw(8) << "rf" << std::setw(8) << "jump"
     << "params\n";
  for (const auto& row : report.rows) {
    os << std::left << std::setw(6) << row.index << std::setw(36) << row.description
       << std::setw(10) << shape_text(row) << std::setw(8) << row.rf.field << std::setw(8)
       << row.rf.jump << row.params << "\n";
  }
  os << "final conv receptive field: " << report.final_conv_receptive_field << "\n";
  os << "total params: " << report.total_params << "\n";
}

void write_report_csv(std::ostream& os, const ArchReport& report) {
  os << "layer,kind,shape,receptive_field,jump,params\n";
  for (const auto& row : report.rows) {
    os << row.index << "," << row.kind << "," << shape_text(row) << "," << row.rf.field << ","
       << row.rf.jump << "," << row.params << "\n";
  }
  os << "total,,,,," << report.total_params << "\n";
}

}  // namespace seizcnn::arch
