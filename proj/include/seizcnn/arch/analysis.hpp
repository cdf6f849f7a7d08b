#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "seizcnn/arch/network_spec.hpp"

namespace seizcnn::arch {

struct LayerShape {
  std::size_t channels;
  std::size_t length;
};

/// Output shape after every layer of `spec` for an input of `input_length`
/// samples. Throws a data error naming the offending layer if a kernel or
/// pool window does not fit.
std::vector<LayerShape> output_shapes(const NetworkSpec& spec, std::size_t input_length);

/// Conv: out*in*k + out. Batch norm: 4 per channel (gamma, beta, running
/// mean, running variance). Everything else: 0.
std::size_t param_count(const NetworkSpec& spec);
std::vector<std::size_t> layer_param_counts(const NetworkSpec& spec);

/// Trainable subset of param_count (batch-norm running statistics excluded).
std::size_t trainable_param_count(const NetworkSpec& spec);

struct ReceptiveField {
  std::size_t field;  // input samples seen by one unit
  std::size_t jump;   // input-sample spacing between adjacent units
};

/// Receptive field of one unit of `layer_index`, using the recurrence
///   rf <- rf + (k - 1) * jump,  jump <- jump * stride
/// over the layers up to and including `layer_index`. Global average pooling
/// acts as a kernel spanning its whole input.
ReceptiveField receptive_field(const NetworkSpec& spec, std::size_t layer_index);

struct ArchRow {
  std::size_t index;
  std::string kind;
  std::string description;
  LayerShape shape;
  ReceptiveField rf;
  std::size_t params;
};

struct ArchReport {
  std::string network;
  std::size_t input_length;
  std::vector<ArchRow> rows;
  std::size_t total_params;
  std::size_t final_conv_receptive_field;
};

ArchReport analyze(const NetworkSpec& spec, std::size_t input_length);

void write_report_text(std::ostream& os, const ArchReport& report);

/// CSV with header `layer,kind,shape,receptive_field,jump,params`.
void write_report_csv(std::ostream& os, const ArchReport& report);

}  // namespace seizcnn::arch
