#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace seizcnn::eegio {

/// Multi-channel EEG in microvolts. All channels have the same length.
struct EegRecording {
  std::string subject_id;
  double sample_rate_hz = 256.0;
  std::vector<std::string> channel_names;
  std::vector<std::vector<float>> samples;  // [channel][sample]

  std::size_t n_channels() const noexcept { return samples.size(); }
  std::size_t n_samples() const noexcept { return samples.empty() ? 0 : samples.front().size(); }
  double duration_s() const noexcept {
    return static_cast<double>(n_samples()) / sample_rate_hz;
  }
  /// floor(duration in seconds): the length of an aligned LabelTrack.
  std::size_t whole_seconds() const;

  void validate() const;

  bool operator==(const EegRecording&) const = default;
};

/// Per-second annotation, 1 = seizure.
struct LabelTrack {
  std::string subject_id;
  std::vector<std::uint8_t> labels;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t seizure_seconds() const;

  bool operator==(const LabelTrack&) const = default;
};

/// `<stem>.eeg` (little-endian float32, channel-major) plus the `<stem>.json`
/// sidecar {subject_id, sample_rate_hz, n_channels, n_samples, channel_names}.
/// `eeg_path` is the .eeg file; the sidecar sits next to it.
void write_recording(const EegRecording& rec, const std::filesystem::path& eeg_path);
EegRecording read_recording(const std::filesystem::path& eeg_path);

std::filesystem::path sidecar_path(const std::filesystem::path& eeg_path);

/// CSV `second,label`, one row per second, label in {0,1}.
void write_labels(const LabelTrack& track, const std::filesystem::path& path);

/// `subject_id` defaults to the file stem.
LabelTrack read_labels(const std::filesystem::path& path, const std::string& subject_id = {});

}  // namespace seizcnn::eegio
