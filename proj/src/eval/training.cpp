#include "seizcnn/eval/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "seizcnn/error.hpp"
#include "seizcnn/eval/metrics.hpp"

namespace seizcnn::eval {

void LabeledWindows::append(std::span<const double> w, std::uint8_t label) {
  if (w.size() != window_length) throw_data_error("window length mismatch");
  samples.insert(samples.end(), w.begin(), w.end());
  labels.push_back(label);
}

void TrainConfig::validate() const {
  optimizer.validate();
  if (epochs == 0) throw_usage_error("epochs must be >= 1");
  if (stop_at_train_accuracy < 0.0 || stop_at_train_accuracy > 1.0) {
    throw_usage_error("stop_at_train_accuracy must lie in [0, 1]");
  }
}

namespace {

void check_two_classes(std::span<const std::uint8_t> labels, const char* what) {
  if (labels.empty()) throw_data_error(std::string(what) + " set is empty");
  const auto pos = std::count_if(labels.begin(), labels.end(), [](auto l) { return l != 0; });
  if (pos == 0 || static_cast<std::size_t>(pos) == labels.size()) {
    throw_data_error(std::string(what) + " set holds a single class");
  }
}

}  // namespace

double accuracy(std::span<const double> probabilities, std::span<const std::uint8_t> labels) {
  if (probabilities.size() != labels.size() || labels.empty()) {
    throw_data_error("accuracy: empty or misaligned input");
  }
  std::size_t ok = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ok += (probabilities[i] >= 0.5) == (labels[i] != 0) ? 1 : 0;
  }
  return static_cast<double>(ok) / static_cast<double>(labels.size());
}

std::vector<std::size_t> select_balanced(std::span<const std::uint8_t> labels, std::size_t count,
                                         Rng& rng) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] != 0 ? pos : neg).push_back(i);
  const std::size_t per_class = std::min({count / 2, pos.size(), neg.size()});
  rng.shuffle(pos.begin(), pos.end());
  rng.shuffle(neg.begin(), neg.end());
  std::vector<std::size_t> out(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(per_class));
  out.insert(out.end(), neg.begin(), neg.begin() + static_cast<std::ptrdiff_t>(per_class));
  std::sort(out.begin(), out.end());
  return out;
}

TrainResult train_model(const arch::NetworkSpec& spec, const LabeledWindows& train,
                        const LabeledWindows& validation, const TrainConfig& cfg) {
  cfg.validate();
  check_two_classes(train.labels, "training");
  check_two_classes(validation.labels, "validation");
  const std::size_t len = spec.input.length * spec.input.channels;
  if (train.window_length != len || validation.window_length != len) {
    throw_data_error("window length does not match the network input");
  }

  Rng rng(cfg.seed);
  arch::Model model = arch::assemble(spec, rng.next_u64());
  arch::SgdMomentum opt(model, cfg.optimizer);

  const std::size_t n = train.size();
  const std::size_t batch = std::min(cfg.optimizer.batch_size, n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  arch::Gradients grads;
  std::vector<int> batch_labels;

  std::vector<EpochRecord> log;
  std::optional<arch::Model> best;
  std::size_t best_epoch = 0;
  double best_auc = -1.0;

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    rng.shuffle(order.begin(), order.end());
    double loss_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t m = std::min(batch, n - start);
      nn::Tensor x(m, spec.input.channels, spec.input.length);
      batch_labels.resize(m);
      for (std::size_t b = 0; b < m; ++b) {
        const auto w = train.window(order[start + b]);
        std::copy(w.begin(), w.end(), x.values().begin() + static_cast<std::ptrdiff_t>(b * len));
        batch_labels[b] = train.labels[order[start + b]];
      }
      loss_sum += model.loss_and_gradients(x, batch_labels, grads);
      opt.step(model, grads);
      ++batches;
    }

    EpochRecord rec{epoch, loss_sum / static_cast<double>(batches),
                    std::numeric_limits<double>::quiet_NaN(), 0.0};
    if (cfg.track_train_accuracy || cfg.stop_at_train_accuracy > 0.0) {
      rec.train_accuracy = accuracy(model.seizure_probability(train.samples), train.labels);
    }
    const auto val_probs = model.seizure_probability(validation.samples);
    if (!std::all_of(val_probs.begin(), val_probs.end(), [](double p) { return std::isfinite(p); })) {
      throw_numeric_error("non-finite validation output at epoch " + std::to_string(epoch));
    }
    rec.validation_auc = auc(roc(val_probs, validation.labels));
    log.push_back(rec);
    if (rec.validation_auc > best_auc) {
      best_auc = rec.validation_auc;
      best_epoch = epoch;
      best = model;
    }
    if (cfg.stop_at_train_accuracy > 0.0 && rec.train_accuracy >= cfg.stop_at_train_accuracy) break;
  }
  return TrainResult{std::move(*best), std::move(log), best_epoch, best_auc};
}

}  // namespace seizcnn::eval
