#pragma once

#include <filesystem>
#include <string>

#include "seizcnn/arch/model.hpp"
#include "seizcnn/shallow/logistic.hpp"

namespace seizcnn::eegio {

/// `<stem>.manifest.json` lists the layers in forward order and every
/// parameter block (name, shape); `<stem>.weights` holds the blocks as
/// little-endian float32, concatenated in manifest order. Batch-norm running
/// statistics are stored, so a CNN blob holds exactly param_count(spec) values.
///
/// Values are written as float32; a model whose parameters are already
/// float-representable (Model::round_to_float) round-trips bit-exactly.
void save_model(const arch::Model& model, const std::filesystem::path& stem);
arch::Model load_model(const std::filesystem::path& stem);

void save_baseline(const shallow::BaselineModel& model, const std::filesystem::path& stem);
shallow::BaselineModel load_baseline(const std::filesystem::path& stem);

/// "cnn" or "logistic", read from the manifest.
std::string model_kind(const std::filesystem::path& stem);

void round_to_float(shallow::BaselineModel& model);

std::filesystem::path manifest_path(const std::filesystem::path& stem);
std::filesystem::path weights_path(const std::filesystem::path& stem);

}  // namespace seizcnn::eegio
