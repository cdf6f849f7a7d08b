#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "seizcnn/error.hpp"
#include "seizcnn/shallow/features.hpp"
#include "seizcnn/shallow/logistic.hpp"

using namespace seizcnn;
using shallow::FeatureVector;

namespace {

std::vector<double> tone(double hz, double amp = 1.0) {
  std::vector<double> x(256);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = amp * std::sin(2.0 * std::numbers::pi * hz * static_cast<double>(i) / 32.0);
  }
  return x;
}

// Two Gaussian blobs split along feature 0.
void toy_set(std::size_t n, double gap, Rng& rng, std::vector<FeatureVector>& x,
             std::vector<int>& y) {
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    FeatureVector f{};
    for (double& v : f) v = rng.normal();
    f[0] = (label != 0 ? gap : -gap) + 0.3 * rng.normal();
    x.push_back(f);
    y.push_back(label);
  }
}

}  // namespace

TEST(Features, ZeroWindow) {
  const auto f = shallow::extract_features(std::vector<double>(256, 0.0));
  for (double v : f) {
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_EQ(v, 0.0);
  }
}

TEST(Features, DeltaToneConcentratesPower) {
  const auto f = shallow::extract_features(tone(2.0));
  EXPECT_GE(f[6], 0.9);
  EXPECT_NEAR(f[0], 1.0 / std::sqrt(2.0), 1e-3);
  EXPECT_LT(f[7], 0.3);
  const auto fast = shallow::extract_features(tone(10.0));
  EXPECT_LT(fast[6], 0.1);
  EXPECT_GT(fast[5], f[5]);
  EXPECT_GT(fast[2], f[2]);
}

TEST(Features, AmplitudeScaling) {
  Rng rng(6);
  std::vector<double> x(256), x2(256);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.normal();
    x2[i] = 2.0 * x[i];
  }
  const auto a = shallow::extract_features(x);
  const auto b = shallow::extract_features(x2);
  EXPECT_NEAR(b[0], 2.0 * a[0], 1e-12);
  EXPECT_NEAR(b[1], 2.0 * a[1], 1e-12);
  for (std::size_t j = 2; j < shallow::kFeatureCount; ++j) EXPECT_NEAR(b[j], a[j], 1e-9) << j;
}

TEST(Features, RejectsWrongLength) {
  EXPECT_THROW(shallow::extract_features(std::vector<double>(100, 0.0)), Error);
}

TEST(Logistic, SeparableSetIsLearned) {
  Rng rng(1);
  std::vector<FeatureVector> x;
  std::vector<int> y;
  toy_set(200, 3.0, rng, x, y);
  const auto fit = shallow::train_baseline(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(fit.model.probability(x[i]) >= 0.5 ? 1 : 0, y[i]);
  }
  for (std::size_t k = 1; k < fit.loss_history.size(); ++k) {
    EXPECT_LE(fit.loss_history[k], fit.loss_history[k - 1] + 1e-12);
  }
}

TEST(Logistic, HeavyPenaltyGivesPrior) {
  Rng rng(2);
  std::vector<FeatureVector> x;
  std::vector<int> y;
  toy_set(100, 3.0, rng, x, y);
  shallow::TrainBaselineConfig cfg;
  cfg.l2 = 1e6;
  const auto fit = shallow::train_baseline(x, y, cfg);
  for (const auto& f : x) EXPECT_NEAR(fit.model.probability(f), 0.5, 1e-3);
}

TEST(Logistic, ZeroWeightsGiveHalf) {
  shallow::BaselineModel m;
  m.feature_scale.fill(1.0);
  FeatureVector f{};
  f.fill(7.0);
  EXPECT_EQ(m.probability(f), 0.5);
}

TEST(Logistic, MonotoneInWeightedFeature) {
  shallow::BaselineModel m;
  m.feature_scale.fill(1.0);
  m.weights[3] = 1.5;
  FeatureVector f{};
  double last = 0.0;
  for (int k = -10; k <= 10; ++k) {
    f[3] = 0.5 * k;
    const double p = m.probability(f);
    EXPECT_GT(p, last);
    EXPECT_GT(p, 0.0);
    EXPECT_LT(p, 1.0);
    last = p;
  }
  f[3] = 1e6;
  EXPECT_LT(m.probability(f), 1.0);
}

TEST(Logistic, GradientMatchesFiniteDifferences) {
  Rng rng(10);
  EXPECT_LT(seizcnn::testing::logistic_gradient_error(20, rng), 1e-6);
}

TEST(Logistic, SingleClassRejected) {
  std::vector<FeatureVector> x(10);
  std::vector<int> y(10, 1);
  EXPECT_THROW(shallow::train_baseline(x, y), Error);
  y.pop_back();
  EXPECT_THROW(shallow::train_baseline(x, y), Error);
}
