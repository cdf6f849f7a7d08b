#include "seizcnn/eegio/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "seizcnn/error.hpp"
#include "seizcnn/random.hpp"

namespace seizcnn::eegio {

namespace {

constexpr std::size_t kMinGapS = 10;
constexpr double kRampS = 5.0;
constexpr double kBackgroundDuringSeizure = 0.6;
constexpr double kDriftHzPerSqrtS = 0.08;
constexpr std::uint64_t kScheduleStream = 0x5eed'0001;

const std::array<const char*, 8> kMontage = {"F4-C4", "C4-O2", "F3-C3", "C3-O1",
                                             "T4-C4", "C4-Cz", "Cz-C3", "C3-T3"};

std::string channel_name(std::size_t c) {
  return c < kMontage.size() ? kMontage[c] : "ch" + std::to_string(c);
}

}  // namespace

void SynthConfig::validate() const {
  if (!(duration_s >= 60.0)) throw_usage_error("synth: duration must be at least 60 s");
  if (n_channels == 0) throw_usage_error("synth: need at least one channel");
  if (!(sample_rate_hz >= 64.0)) throw_usage_error("synth: sample rate must be >= 64 Hz");
  if (!(seizure_freq_min_hz < seizure_freq_max_hz)) {
    throw_usage_error("synth: empty seizure frequency range");
  }
  if (seizure_freq_min_hz < 0.5 || seizure_freq_max_hz > 12.8) {
    throw_usage_error("synth: seizure frequency range must lie within [0.5, 12.8] Hz");
  }
  if (!(event_min_s >= 1.0 && event_min_s <= event_max_s)) {
    throw_usage_error("synth: invalid event duration range");
  }
  if (!(background_scale > 0.0)) throw_usage_error("synth: background scale must be positive");
  if (!(subject_variability > 0.0)) throw_usage_error("synth: subject variability must be positive");
}

std::vector<SeizureEvent> plan_events(const SynthConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.seizure_event_count;
  if (n == 0) return {};
  Rng rng(mix_seed(cfg.seed ^ kScheduleStream));
  std::vector<std::size_t> durations(n);
  std::size_t busy = 0;
  for (auto& d : durations) {
    d = static_cast<std::size_t>(std::llround(rng.uniform(cfg.event_min_s, cfg.event_max_s)));
    busy += d;
  }
  const auto total = static_cast<std::size_t>(std::floor(cfg.duration_s));
  const std::size_t min_busy = busy + kMinGapS * (n + 1);
  if (min_busy > total) {
    throw_usage_error("synth: " + std::to_string(n) + " events need " + std::to_string(min_busy) +
                      " s but the recording lasts " + std::to_string(total) + " s");
  }
  const std::size_t free = total - min_busy;
  std::vector<double> weights(n + 1);
  double weight_sum = 0.0;
  for (auto& w : weights) {
    w = 1.0 - rng.uniform();  // (0, 1]
    weight_sum += w;
  }
  std::vector<SeizureEvent> events;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto extra =
        static_cast<std::size_t>(std::floor(static_cast<double>(free) * weights[i] / weight_sum));
    cursor += kMinGapS + extra;
    events.push_back({cursor, durations[i]});
    cursor += durations[i];
  }
  return events;
}

std::pair<EegRecording, LabelTrack> synth_subject(const SynthConfig& cfg) {
  const auto events = plan_events(cfg);
  const double fs = cfg.sample_rate_hz;
  const auto n_samples = static_cast<std::size_t>(std::floor(cfg.duration_s * fs));
  const double var = cfg.subject_variability;
  Rng rng(cfg.seed);

  // Subject-level parameters.
  const double bg_gain = cfg.background_scale * std::exp(0.3 * var * rng.normal());
  const double seizure_gain = 2.0 * bg_gain * std::exp(var * rng.normal());
  const double h2 = 0.3 + 0.4 * rng.uniform();
  const double h3 = 0.1 + 0.3 * rng.uniform();
  const double wave_norm = 1.0 / std::sqrt(0.5 * (1.0 + h2 * h2 + h3 * h3));
  std::vector<double> channel_gain(cfg.n_channels);
  std::vector<double> involvement(cfg.n_channels);
  std::vector<double> phase_lag(cfg.n_channels);
  for (std::size_t c = 0; c < cfg.n_channels; ++c) {
    channel_gain[c] = std::exp(0.2 * var * rng.normal());
    involvement[c] = 0.4 + 0.6 * rng.uniform();
    phase_lag[c] = 0.5 * rng.uniform();
  }

  // Seizure waveform (shared across channels up to gain and lag) and its envelope.
  std::vector<double> envelope(n_samples, 0.0);
  std::vector<double> phase(n_samples, 0.0);
  for (const auto& ev : events) {
    const auto first = static_cast<std::size_t>(static_cast<double>(ev.start_s) * fs);
    const auto last = std::min(
        n_samples, static_cast<std::size_t>(static_cast<double>(ev.start_s + ev.duration_s) * fs));
    const double dur = static_cast<double>(ev.duration_s);
    const double ramp = std::min(kRampS, dur / 4.0);
    double freq = rng.uniform(cfg.seizure_freq_min_hz, cfg.seizure_freq_max_hz);
    const double am_period = rng.uniform(10.0, 30.0);
    const double am_phase = 2.0 * std::numbers::pi * rng.uniform();
    double ph = 2.0 * std::numbers::pi * rng.uniform();
    const auto per_second = static_cast<std::size_t>(fs);
    for (std::size_t i = first; i < last; ++i) {
      const double t = static_cast<double>(i - first) / fs;
      if ((i - first) % per_second == 0 && i != first) {
        freq += kDriftHzPerSqrtS * rng.normal();
        if (freq < cfg.seizure_freq_min_hz) freq = 2.0 * cfg.seizure_freq_min_hz - freq;
        if (freq > cfg.seizure_freq_max_hz) freq = 2.0 * cfg.seizure_freq_max_hz - freq;
        freq = std::clamp(freq, cfg.seizure_freq_min_hz, cfg.seizure_freq_max_hz);
      }
      ph += 2.0 * std::numbers::pi * freq / fs;
      double env = 1.0;
      if (t < ramp) env = 0.5 - 0.5 * std::cos(std::numbers::pi * t / ramp);
      if (dur - t < ramp) env = std::min(env, 0.5 - 0.5 * std::cos(std::numbers::pi * (dur - t) / ramp));
      env *= 1.0 + 0.3 * std::sin(2.0 * std::numbers::pi * t / am_period + am_phase);
      envelope[i] = env;
      phase[i] = ph;
    }
  }

  // Background: sum of AR(1) processes with octave-spaced corners.
  constexpr std::size_t kBands = 9;
  std::array<double, kBands> pole{};
  std::array<double, kBands> drive{};
  for (std::size_t b = 0; b < kBands; ++b) {
    const double fc = 0.05 * std::ldexp(1.0, static_cast<int>(b));
    pole[b] = std::exp(-2.0 * std::numbers::pi * fc / fs);
    drive[b] = std::sqrt(1.0 - pole[b] * pole[b]);
  }
  const double band_norm = 1.0 / std::sqrt(static_cast<double>(kBands));

  EegRecording rec;
  rec.subject_id = cfg.subject_id.empty() ? "subject" + std::to_string(cfg.seed) : cfg.subject_id;
  rec.sample_rate_hz = fs;
  rec.samples.resize(cfg.n_channels);
  for (std::size_t c = 0; c < cfg.n_channels; ++c) {
    rec.channel_names.push_back(channel_name(c));
    std::array<double, kBands> state{};
    for (auto& s : state) s = rng.normal();
    const double lag = phase_lag[c];
    auto& out = rec.samples[c];
    out.resize(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
      double bg = 0.0;
      for (std::size_t b = 0; b < kBands; ++b) {
        state[b] = pole[b] * state[b] + drive[b] * rng.normal();
        bg += state[b];
      }
      bg *= band_norm * bg_gain * channel_gain[c];
      double v = bg;
      if (envelope[i] != 0.0) {
        const double ph = phase[i] - lag;
        const double wave =
            wave_norm * (std::sin(ph) + h2 * std::sin(2.0 * ph) + h3 * std::sin(3.0 * ph));
        const double env = envelope[i];
        v = bg * (1.0 - (1.0 - kBackgroundDuringSeizure) * std::min(env, 1.0)) +
            involvement[c] * seizure_gain * env * wave;
      }
      out[i] = static_cast<float>(v);
    }
  }

  LabelTrack labels{rec.subject_id, std::vector<std::uint8_t>(rec.whole_seconds(), 0)};
  for (const auto& ev : events) {
    for (std::size_t s = ev.start_s; s < ev.start_s + ev.duration_s && s < labels.size(); ++s) {
      labels.labels[s] = 1;
    }
  }
  return {std::move(rec), std::move(labels)};
}

}  // namespace seizcnn::eegio
