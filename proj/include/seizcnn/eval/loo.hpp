#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "seizcnn/arch/network_spec.hpp"
#include "seizcnn/dsp/preprocess.hpp"
#include "seizcnn/eegio/recording.hpp"
#include "seizcnn/eval/evaluate.hpp"
#include "seizcnn/eval/training.hpp"
#include "seizcnn/shallow/features.hpp"
#include "seizcnn/shallow/logistic.hpp"

namespace seizcnn::eval {

/// One subject after filtering, decimation and windowing, with both
/// classifier inputs ready. Window k of every channel starts at second k
/// and carries label k.
struct PreparedSubject {
  std::string subject_id;
  std::vector<std::size_t> channels;               // source channel indices
  std::vector<std::vector<double>> cnn_windows;    // per channel, standardized, back to back
  std::vector<std::vector<shallow::FeatureVector>> features;  // per channel
  std::vector<std::uint8_t> window_labels;
  std::size_t window_length = 256;

  std::size_t window_count() const noexcept { return window_labels.size(); }
};

/// `channels` empty keeps every channel.
PreparedSubject prepare_subject(const eegio::EegRecording& rec, const eegio::LabelTrack& labels,
                                const dsp::PreprocessConfig& cfg = {},
                                std::span<const std::size_t> channels = {});

/// Scores a subject: raw per-second, channel-fused seizure probability.
using TraceScorer = std::function<std::vector<double>(const PreparedSubject&)>;

struct TrainedFold {
  TraceScorer score;
  std::set<std::string> subjects_used;  // every subject contributing a training or validation window
  std::size_t training_windows = 0;
  std::size_t validation_windows = 0;
  std::size_t best_epoch = 0;  // 0 for classifiers without epochs
  std::vector<EpochRecord> epoch_log;
};

/// Builds a classifier from the training subjects of one fold.
using FoldTrainer =
    std::function<TrainedFold(std::span<const PreparedSubject* const> training, std::uint64_t seed)>;

struct CnnTrainerConfig {
  TrainConfig train;
  // Balanced training-subset size as a fraction of the validation window
  // count, capped by twice the minority class.
  double train_fraction = 0.02;
  ChannelCombine combine = ChannelCombine::max;
};

struct CnnFit {
  TrainResult result;  // weights rounded to float32
  std::size_t training_windows;
  std::size_t validation_windows;
};

/// Trains on a balanced subset of the subjects' windows and validates on
/// all of them.
CnnFit fit_cnn(std::span<const PreparedSubject* const> subjects, const arch::NetworkSpec& spec,
               const CnnTrainerConfig& cfg, std::uint64_t seed);

struct BaselineFitSummary {
  shallow::BaselineModel model;  // rounded to float32
  std::size_t training_windows;
};

/// Every seizure window of the subjects plus an equal number of randomly
/// drawn non-seizure windows.
BaselineFitSummary fit_baseline(std::span<const PreparedSubject* const> subjects,
                                const shallow::TrainBaselineConfig& cfg, std::uint64_t seed);

FoldTrainer cnn_trainer(const arch::NetworkSpec& spec, const CnnTrainerConfig& cfg);
FoldTrainer baseline_trainer(const shallow::TrainBaselineConfig& cfg,
                             ChannelCombine combine = ChannelCombine::max);

/// Channel-fused raw trace of a trained CNN or baseline on one subject.
std::vector<double> cnn_trace(const arch::Model& model, const PreparedSubject& s,
                              ChannelCombine combine = ChannelCombine::max);
std::vector<double> baseline_trace(const shallow::BaselineModel& model, const PreparedSubject& s,
                                   ChannelCombine combine = ChannelCombine::max);

struct FoldReport {
  std::string subject_id;
  std::uint64_t seed = 0;
  TraceMetrics metrics;
  std::size_t best_epoch = 0;
  std::size_t training_windows = 0;
  std::size_t validation_windows = 0;
  std::vector<double> raw_trace;
  std::vector<std::uint8_t> labels;
  std::vector<EpochRecord> epoch_log;
};

struct LooConfig {
  std::uint64_t master_seed = 1;
  std::size_t threads = 1;
  PostProcessConfig post;
  double max_fdh = 0.25;
};

/// One fold per subject, in input order. The fold seed is derived from the
/// master seed and the test subject id, so reports do not depend on subject
/// order. Throws std::logic_error if a trainer reports using the test subject.
std::vector<FoldReport> loo_harness(std::span<const PreparedSubject> subjects,
                                    const FoldTrainer& trainer, const LooConfig& cfg);

/// CSV with one row per fold followed by `mean` and `ci95` rows.
void write_fold_csv(std::ostream& os, std::span<const FoldReport> folds);

/// CSV `second,probability`, 17 significant digits.
void write_trace_csv(std::ostream& os, std::span<const double> trace);
std::vector<double> read_trace_csv(std::istream& is, const std::string& source);

}  // namespace seizcnn::eval
