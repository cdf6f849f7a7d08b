#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "seizcnn/arch/network_spec.hpp"
#include "seizcnn/error.hpp"
#include "seizcnn/eval/training.hpp"

using namespace seizcnn;
using namespace seizcnn::eval;

namespace {

// Seizure-like windows carry a 3 Hz rhythm over the noise; others are noise.
LabeledWindows toy_windows(std::size_t n, Rng& rng) {
  LabeledWindows w;
  std::vector<double> buf(256);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t label = i % 2 == 0 ? 1 : 0;
    const double phase = rng.uniform(0.0, 6.28);
    for (std::size_t k = 0; k < buf.size(); ++k) {
      buf[k] = 0.5 * rng.normal();
      if (label != 0) buf[k] += std::sin(2.0 * std::numbers::pi * 3.0 * static_cast<double>(k) / 32.0 + phase);
    }
    w.append(buf, label);
  }
  return w;
}

TrainConfig quick_config(std::size_t epochs) {
  TrainConfig cfg;
  cfg.epochs = epochs;
  cfg.seed = 3;
  cfg.optimizer.batch_size = 16;
  cfg.optimizer.learning_rate = 0.05;
  return cfg;
}

}  // namespace

TEST(Training, LogAndBestEpoch) {
  Rng rng(1);
  const auto train = toy_windows(32, rng);
  const auto val = toy_windows(32, rng);
  const auto r = train_model(arch::build_cnn11(), train, val, quick_config(4));
  ASSERT_EQ(r.log.size(), 4u);
  double best = -1.0;
  std::size_t best_epoch = 0;
  for (const auto& e : r.log) {
    EXPECT_TRUE(std::isfinite(e.train_loss));
    EXPECT_TRUE(std::isnan(e.train_accuracy));
    if (e.validation_auc > best) {
      best = e.validation_auc;
      best_epoch = e.epoch;
    }
  }
  EXPECT_EQ(r.best_epoch, best_epoch);
  EXPECT_EQ(r.best_validation_auc, best);
  EXPECT_EQ(r.log.front().epoch, 1u);
}

TEST(Training, Deterministic) {
  Rng rng(2);
  const auto train = toy_windows(16, rng);
  const auto val = toy_windows(16, rng);
  const auto a = train_model(arch::build_cnn6(), train, val, quick_config(2));
  const auto b = train_model(arch::build_cnn6(), train, val, quick_config(2));
  ASSERT_EQ(a.log.size(), b.log.size());
  for (std::size_t i = 0; i < a.log.size(); ++i) EXPECT_EQ(a.log[i].train_loss, b.log[i].train_loss);
  EXPECT_EQ(a.model.seizure_probability(val.samples), b.model.seizure_probability(val.samples));
}

TEST(Training, RejectsDegenerateSets) {
  Rng rng(3);
  const auto good = toy_windows(8, rng);
  LabeledWindows single;
  for (std::size_t i = 0; i < 4; ++i) single.append(good.window(1), 0);
  EXPECT_THROW(train_model(arch::build_cnn6(), single, good, quick_config(1)), Error);
  EXPECT_THROW(train_model(arch::build_cnn6(), LabeledWindows{}, good, quick_config(1)), Error);
  EXPECT_THROW(train_model(arch::build_cnn6(), good, single, quick_config(1)), Error);
  EXPECT_THROW(train_model(arch::build_cnn6(), good, good, quick_config(0)), Error);
  LabeledWindows wrong;
  EXPECT_THROW(wrong.append(std::vector<double>(100, 0.0), 1), Error);
}

TEST(Training, SelectBalanced) {
  std::vector<std::uint8_t> labels(100, 0);
  for (std::size_t i = 0; i < 100; i += 10) labels[i] = 1;
  Rng rng(4);
  const auto idx = select_balanced(labels, 12, rng);
  ASSERT_EQ(idx.size(), 12u);
  EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
  EXPECT_EQ(std::count_if(idx.begin(), idx.end(), [&](auto i) { return labels[i] == 1; }), 6);
  // Capped by the 10 seizure windows.
  const auto capped = select_balanced(labels, 60, rng);
  EXPECT_EQ(capped.size(), 20u);
  EXPECT_EQ(std::adjacent_find(capped.begin(), capped.end()), capped.end());
}

TEST(Training, Accuracy) {
  const std::vector<double> p{0.9, 0.2, 0.5, 0.4};
  const std::vector<std::uint8_t> l{1, 0, 1, 1};
  EXPECT_DOUBLE_EQ(accuracy(p, l), 0.75);
  EXPECT_THROW(accuracy(p, std::vector<std::uint8_t>{1}), Error);
}
