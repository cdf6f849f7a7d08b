#include "seizcnn/eegio/recording.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "seizcnn/eegio/binary.hpp"
#include "seizcnn/error.hpp"

namespace seizcnn::eegio {

using nlohmann::json;

std::size_t EegRecording::whole_seconds() const {
  return static_cast<std::size_t>(std::floor(duration_s() + 1e-9));
}

void EegRecording::validate() const {
  if (!(sample_rate_hz > 0.0)) throw_data_error(subject_id + ": sample rate must be positive");
  if (samples.empty()) throw_data_error(subject_id + ": recording has no channels");
  if (channel_names.size() != samples.size()) {
    throw_data_error(subject_id + ": " + std::to_string(channel_names.size()) +
                     " channel names for " + std::to_string(samples.size()) + " channels");
  }
  for (const auto& ch : samples) {
    if (ch.size() != samples.front().size()) {
      throw_data_error(subject_id + ": channels have different lengths");
    }
  }
}

std::size_t LabelTrack::seizure_seconds() const {
  std::size_t n = 0;
  for (auto v : labels) n += v;
  return n;
}

std::filesystem::path sidecar_path(const std::filesystem::path& eeg_path) {
  auto p = eeg_path;
  p.replace_extension(".json");
  return p;
}

void write_recording(const EegRecording& rec, const std::filesystem::path& eeg_path) {
  rec.validate();
  json meta = {{"subject_id", rec.subject_id},
               {"sample_rate_hz", rec.sample_rate_hz},
               {"n_channels", rec.n_channels()},
               {"n_samples", rec.n_samples()},
               {"channel_names", rec.channel_names}};

  std::ofstream bin(eeg_path, std::ios::binary | std::ios::trunc);
  if (!bin) throw_data_error("cannot write " + eeg_path.string());
  for (const auto& ch : rec.samples) write_f32_le(bin, ch);
  if (!bin) throw_data_error("write failed: " + eeg_path.string());

  std::ofstream side(sidecar_path(eeg_path), std::ios::trunc);
  if (!side) throw_data_error("cannot write " + sidecar_path(eeg_path).string());
  side << meta.dump(2) << "\n";
}

EegRecording read_recording(const std::filesystem::path& eeg_path) {
  const auto side_path = sidecar_path(eeg_path);
  std::ifstream side(side_path);
  if (!side) throw_data_error("cannot open " + side_path.string());
  EegRecording rec;
  std::size_t n_channels = 0;
  std::size_t n_samples = 0;
  try {
    const json meta = json::parse(side);
    rec.subject_id = meta.at("subject_id").get<std::string>();
    rec.sample_rate_hz = meta.at("sample_rate_hz").get<double>();
    n_channels = meta.at("n_channels").get<std::size_t>();
    n_samples = meta.at("n_samples").get<std::size_t>();
    rec.channel_names = meta.at("channel_names").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw_data_error("malformed header " + side_path.string() + ": " + e.what());
  }
  if (n_channels == 0 || rec.channel_names.size() != n_channels) {
    throw_data_error("malformed header " + side_path.string() + ": channel count disagrees");
  }

  std::ifstream bin(eeg_path, std::ios::binary);
  if (!bin) throw_data_error("cannot open " + eeg_path.string());
  const auto bytes = std::filesystem::file_size(eeg_path);
  const auto expected = static_cast<std::uintmax_t>(n_channels) * n_samples * 4;
  if (bytes != expected) {
    throw_data_error(eeg_path.string() + ": header declares " + std::to_string(n_channels) + "x" +
                     std::to_string(n_samples) + " samples (" + std::to_string(expected) +
                     " bytes), file holds " + std::to_string(bytes) + " bytes");
  }
  rec.samples.resize(n_channels);
  for (auto& ch : rec.samples) ch = read_f32_le(bin, n_samples);
  rec.validate();
  return rec;
}

void write_labels(const LabelTrack& track, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw_data_error("cannot write " + path.string());
  out << "second,label\n";
  for (std::size_t i = 0; i < track.labels.size(); ++i) {
    out << i << "," << static_cast<int>(track.labels[i]) << "\n";
  }
}

LabelTrack read_labels(const std::filesystem::path& path, const std::string& subject_id) {
  std::ifstream in(path);
  if (!in) throw_data_error("cannot open " + path.string());
  LabelTrack track{subject_id.empty() ? path.stem().string() : subject_id, {}};
  std::string line;
  if (!std::getline(in, line) || (line != "second,label" && line != "second,label\r")) {
    throw_data_error(path.string() + ": expected header 'second,label'");
  }
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw_data_error(path.string() + ": malformed row '" + line + "'");
    const std::string sec = line.substr(0, comma);
    const std::string lab = line.substr(comma + 1);
    if (sec != std::to_string(row)) {
      throw_data_error(path.string() + ": second index " + sec + " where " + std::to_string(row) +
                       " was expected");
    }
    if (lab != "0" && lab != "1") {
      throw_data_error(path.string() + ": label '" + lab + "' at second " + sec + " is not 0 or 1");
    }
    track.labels.push_back(lab == "1" ? 1 : 0);
    ++row;
  }
  return track;
}

}  // namespace seizcnn::eegio
