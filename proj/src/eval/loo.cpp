#include "seizcnn/eval/loo.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <istream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "seizcnn/eegio/model_io.hpp"
#include "seizcnn/error.hpp"
#include "seizcnn/eval/stats.hpp"
#include "seizcnn/random.hpp"

namespace seizcnn::eval {

PreparedSubject prepare_subject(const eegio::EegRecording& rec, const eegio::LabelTrack& labels,
                                const dsp::PreprocessConfig& cfg,
                                std::span<const std::size_t> channels) {
  dsp::PreprocessConfig raw_cfg = cfg;
  raw_cfg.standardize = false;
  const auto batches = dsp::preprocess(rec, raw_cfg);

  PreparedSubject s;
  s.subject_id = rec.subject_id;
  if (channels.empty()) {
    for (std::size_t c = 0; c < batches.size(); ++c) s.channels.push_back(c);
  } else {
    s.channels.assign(channels.begin(), channels.end());
  }
  for (std::size_t c : s.channels) {
    if (c >= batches.size()) {
      throw_data_error(rec.subject_id + ": channel " + std::to_string(c) + " does not exist");
    }
  }

  const std::size_t nw = batches.front().size();
  if (labels.size() < nw) {
    throw_data_error(rec.subject_id + ": " + std::to_string(labels.size()) +
                     " labelled seconds for " + std::to_string(nw) + " windows");
  }
  s.window_labels.assign(labels.labels.begin(), labels.labels.begin() + static_cast<std::ptrdiff_t>(nw));
  s.window_length = batches.front().window_length;

  for (std::size_t c : s.channels) {
    const auto& b = batches[c];
    std::vector<shallow::FeatureVector> feats;
    feats.reserve(nw);
    std::vector<double> windows(b.samples);
    for (std::size_t k = 0; k < nw; ++k) {
      feats.push_back(shallow::extract_features(b.window(k), cfg.target_fs));
      if (cfg.standardize) {
        dsp::standardize(std::span<double>(windows.data() + k * s.window_length, s.window_length));
      }
    }
    s.cnn_windows.push_back(std::move(windows));
    s.features.push_back(std::move(feats));
  }
  return s;
}

std::vector<double> cnn_trace(const arch::Model& model, const PreparedSubject& s,
                              ChannelCombine combine) {
  std::vector<std::vector<double>> per_channel;
  for (const auto& w : s.cnn_windows) per_channel.push_back(model.seizure_probability(w));
  return channel_fuse(per_channel, combine);
}

std::vector<double> baseline_trace(const shallow::BaselineModel& model, const PreparedSubject& s,
                                   ChannelCombine combine) {
  std::vector<std::vector<double>> per_channel;
  for (const auto& feats : s.features) {
    std::vector<double> p;
    p.reserve(feats.size());
    for (const auto& f : feats) p.push_back(model.probability(f));
    per_channel.push_back(std::move(p));
  }
  return channel_fuse(per_channel, combine);
}

CnnFit fit_cnn(std::span<const PreparedSubject* const> subjects, const arch::NetworkSpec& spec,
               const CnnTrainerConfig& cfg, std::uint64_t seed) {
  if (!(cfg.train_fraction > 0.0)) throw_usage_error("train_fraction must be positive");
  LabeledWindows validation;
  validation.window_length = spec.input.length;
  for (const auto* s : subjects) {
    if (s->window_length != spec.input.length) {
      throw_data_error(s->subject_id + ": window length does not match the network input");
    }
    for (const auto& w : s->cnn_windows) {
      validation.samples.insert(validation.samples.end(), w.begin(), w.end());
      validation.labels.insert(validation.labels.end(), s->window_labels.begin(),
                               s->window_labels.end());
    }
  }
  Rng rng(seed);
  const auto count =
      static_cast<std::size_t>(cfg.train_fraction * static_cast<double>(validation.size()));
  const auto picked = select_balanced(validation.labels, std::max<std::size_t>(count, 2), rng);
  LabeledWindows train;
  train.window_length = validation.window_length;
  for (std::size_t i : picked) train.append(validation.window(i), validation.labels[i]);

  TrainConfig tc = cfg.train;
  tc.seed = rng.next_u64();
  CnnFit fit{train_model(spec, train, validation, tc), train.size(), validation.size()};
  fit.result.model.round_to_float();
  return fit;
}

BaselineFitSummary fit_baseline(std::span<const PreparedSubject* const> subjects,
                                const shallow::TrainBaselineConfig& cfg, std::uint64_t seed) {
  std::vector<shallow::FeatureVector> all;
  std::vector<std::uint8_t> labels;
  for (const auto* s : subjects) {
    for (const auto& feats : s->features) {
      all.insert(all.end(), feats.begin(), feats.end());
      labels.insert(labels.end(), s->window_labels.begin(), s->window_labels.end());
    }
  }
  Rng rng(seed);
  const auto picked = select_balanced(labels, labels.size(), rng);
  std::vector<shallow::FeatureVector> x;
  std::vector<int> y;
  for (std::size_t i : picked) {
    x.push_back(all[i]);
    y.push_back(labels[i]);
  }
  BaselineFitSummary out{shallow::train_baseline(x, y, cfg).model, x.size()};
  eegio::round_to_float(out.model);
  return out;
}

FoldTrainer cnn_trainer(const arch::NetworkSpec& spec, const CnnTrainerConfig& cfg) {
  return [spec, cfg](std::span<const PreparedSubject* const> training, std::uint64_t seed) {
    TrainedFold fold;
    for (const auto* s : training) fold.subjects_used.insert(s->subject_id);
    auto fit = fit_cnn(training, spec, cfg, seed);
    fold.training_windows = fit.training_windows;
    fold.validation_windows = fit.validation_windows;
    fold.best_epoch = fit.result.best_epoch;
    fold.epoch_log = std::move(fit.result.log);
    auto model = std::make_shared<const arch::Model>(std::move(fit.result.model));
    const auto combine = cfg.combine;
    fold.score = [model, combine](const PreparedSubject& s) { return cnn_trace(*model, s, combine); };
    return fold;
  };
}

FoldTrainer baseline_trainer(const shallow::TrainBaselineConfig& cfg, ChannelCombine combine) {
  return [cfg, combine](std::span<const PreparedSubject* const> training, std::uint64_t seed) {
    TrainedFold fold;
    for (const auto* s : training) fold.subjects_used.insert(s->subject_id);
    auto fit = fit_baseline(training, cfg, seed);
    fold.training_windows = fit.training_windows;
    auto model = std::make_shared<const shallow::BaselineModel>(std::move(fit.model));
    fold.score = [model, combine](const PreparedSubject& s) {
      return baseline_trace(*model, s, combine);
    };
    return fold;
  };
}

std::vector<FoldReport> loo_harness(std::span<const PreparedSubject> subjects,
                                    const FoldTrainer& trainer, const LooConfig& cfg) {
  if (subjects.size() < 2) throw_data_error("leave-one-out needs at least two subjects");
  std::set<std::string> ids;
  for (const auto& s : subjects) {
    if (!ids.insert(s.subject_id).second) {
      throw_data_error("duplicate subject id '" + s.subject_id + "'");
    }
  }

  std::vector<FoldReport> reports(subjects.size());
  auto run_fold = [&](std::size_t f) {
    const auto& test = subjects[f];
    std::vector<const PreparedSubject*> training;
    for (const auto& s : subjects) {
      if (s.subject_id != test.subject_id) training.push_back(&s);
    }
    std::sort(training.begin(), training.end(),
              [](const auto* a, const auto* b) { return a->subject_id < b->subject_id; });

    FoldReport& r = reports[f];
    r.subject_id = test.subject_id;
    r.seed = derive_seed(cfg.master_seed, test.subject_id);
    auto fold = trainer(training, r.seed);
    if (fold.subjects_used.contains(test.subject_id)) {
      throw std::logic_error("fold " + test.subject_id + ": test subject leaked into training");
    }
    r.raw_trace = fold.score(test);
    r.labels = test.window_labels;
    r.metrics = evaluate_trace(r.raw_trace, r.labels, cfg.post, cfg.max_fdh);
    r.best_epoch = fold.best_epoch;
    r.training_windows = fold.training_windows;
    r.validation_windows = fold.validation_windows;
    r.epoch_log = std::move(fold.epoch_log);
  };

  const std::size_t workers = std::clamp<std::size_t>(cfg.threads, 1, subjects.size());
  if (workers == 1) {
    for (std::size_t f = 0; f < subjects.size(); ++f) run_fold(f);
    return reports;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(subjects.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t f = next++; f < subjects.size(); f = next++) {
          try {
            run_fold(f);
          } catch (...) {
            errors[f] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void write_fold_csv(std::ostream& os, std::span<const FoldReport> folds) {
  os << "subject,auc,auc90,sens_at_0.25fdh,fdh_constraint_met,best_epoch,training_windows,"
        "validation_windows";
  for (double h : kFdhThresholds) os << ",fdh_" << fmt(h).substr(0, 3);
  os << "\n";
  std::vector<double> aucs, auc90s, sens;
  for (const auto& f : folds) {
    os << f.subject_id << "," << fmt(f.metrics.auc) << "," << fmt(f.metrics.auc90) << ","
       << fmt(f.metrics.sensitivity_at_fdh) << "," << (f.metrics.fdh_constraint_met ? 1 : 0)
       << "," << f.best_epoch << "," << f.training_windows << "," << f.validation_windows;
    for (const auto& e : f.metrics.fdh_table) os << "," << fmt(e.fd_per_hour);
    os << "\n";
    aucs.push_back(f.metrics.auc);
    auc90s.push_back(f.metrics.auc90);
    sens.push_back(f.metrics.sensitivity_at_fdh);
  }
  if (folds.size() >= 2) {
    const auto a = mean_ci(aucs), b = mean_ci(auc90s), c = mean_ci(sens);
    os << "mean," << fmt(a.mean) << "," << fmt(b.mean) << "," << fmt(c.mean) << ",,,,";
    for (std::size_t i = 0; i < std::size(kFdhThresholds); ++i) os << ",";
    os << "\n";
    os << "ci95," << fmt(a.half_width) << "," << fmt(b.half_width) << "," << fmt(c.half_width)
       << ",,,,";
    for (std::size_t i = 0; i < std::size(kFdhThresholds); ++i) os << ",";
    os << "\n";
  }
}

void write_trace_csv(std::ostream& os, std::span<const double> trace) {
  os << "second,probability\n";
  char buf[40];
  for (std::size_t t = 0; t < trace.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%.17g", trace[t]);
    os << t << "," << buf << "\n";
  }
}

std::vector<double> read_trace_csv(std::istream& is, const std::string& source) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("second,probability", 0) != 0) {
    throw_data_error(source + ": expected header 'second,probability'");
  }
  std::vector<double> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("missing comma");
      const auto second = std::stoull(line.substr(0, comma));
      if (second != out.size()) throw std::invalid_argument("seconds not contiguous");
      std::size_t used = 0;
      const std::string value = line.substr(comma + 1);
      const double p = std::stod(value, &used);
      if (value.find_first_not_of(" \r", used) != std::string::npos) {
        throw std::invalid_argument("trailing characters after probability");
      }
      out.push_back(p);
    } catch (const std::exception& e) {
      throw_data_error(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (out.empty()) throw_data_error(source + ": no samples");
  return out;
}

}  // namespace seizcnn::eval
