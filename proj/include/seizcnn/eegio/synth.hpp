#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "seizcnn/eegio/recording.hpp"

namespace seizcnn::eegio {

struct SynthConfig {
  std::uint64_t seed = 1;
  std::string subject_id;  // defaults to "subject<seed>"
  double duration_s = 1200.0;
  std::size_t n_channels = 8;
  double sample_rate_hz = 256.0;
  std::size_t seizure_event_count = 3;
  double seizure_freq_min_hz = 1.0;
  double seizure_freq_max_hz = 4.0;
  double event_min_s = 60.0;
  double event_max_s = 120.0;
  double background_scale = 20.0;  // background RMS, microvolts
  double subject_variability = 0.25;

  void validate() const;
};

struct SeizureEvent {
  std::size_t start_s;
  std::size_t duration_s;
};

/// Event schedule for `cfg`: non-overlapping whole-second intervals inside
/// the recording, at least 10 s apart, sorted by start. Depends only on
/// the seed and the event parameters.
std::vector<SeizureEvent> plan_events(const SynthConfig& cfg);

/// Synthetic subject.
///
/// Background: each channel is a sum of eight unit-variance AR(1) processes
/// with corner frequencies 0.05 * 2^i Hz; equal-power Lorentzians with
/// octave-spaced corners give an approximately 1/f spectrum.
///
/// Seizure: a fundamental drawn from the configured range with a bounded
/// random-walk frequency drift, plus 2nd and 3rd harmonics, under a 5 s
/// raised-cosine amplitude ramp at both ends. During events the background
/// is attenuated to 60 %. Subject-level gains, harmonic mix and per-channel
/// seizure involvement are drawn with log-normal spread set by
/// subject_variability, so different seeds give different subjects.
std::pair<EegRecording, LabelTrack> synth_subject(const SynthConfig& cfg);

}  // namespace seizcnn::eegio
