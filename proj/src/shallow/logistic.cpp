#include "seizcnn/shallow/logistic.hpp"

#include <algorithm>
#include <cmath>

#include "seizcnn/error.hpp"

namespace seizcnn::shallow {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

FeatureVector standardize(const FeatureVector& f, const BaselineModel& m) {
  FeatureVector out{};
  for (std::size_t j = 0; j < kFeatureCount; ++j) out[j] = (f[j] - m.feature_mean[j]) / m.feature_scale[j];
  return out;
}

}  // namespace

double BaselineModel::probability(const FeatureVector& features) const {
  const auto x = standardize(features, *this);
  double z = bias;
  for (std::size_t j = 0; j < kFeatureCount; ++j) z += weights[j] * x[j];
  return sigmoid(std::clamp(z, -30.0, 30.0));
}

double logistic_loss(std::span<const FeatureVector> standardized, std::span<const int> labels,
                     const FeatureVector& weights, double bias, double l2,
                     std::vector<double>* grad) {
  const double n = static_cast<double>(standardized.size());
  double loss = 0.0;
  if (grad != nullptr) grad->assign(kFeatureCount + 1, 0.0);
  for (std::size_t i = 0; i < standardized.size(); ++i) {
    const auto& x = standardized[i];
    double z = bias;
    for (std::size_t j = 0; j < kFeatureCount; ++j) z += weights[j] * x[j];
    // -[y log s(z) + (1-y) log(1 - s(z))] = softplus(z) - y z
    loss += softplus(z) - (labels[i] != 0 ? z : 0.0);
    if (grad != nullptr) {
      const double r = sigmoid(z) - (labels[i] != 0 ? 1.0 : 0.0);
      for (std::size_t j = 0; j < kFeatureCount; ++j) (*grad)[j] += r * x[j];
      (*grad)[kFeatureCount] += r;
    }
  }
  loss /= n;
  double wsq = 0.0;
  for (double w : weights) wsq += w * w;
  loss += 0.5 * l2 * wsq;
  if (grad != nullptr) {
    for (std::size_t j = 0; j < kFeatureCount; ++j) (*grad)[j] = (*grad)[j] / n + l2 * weights[j];
    (*grad)[kFeatureCount] /= n;
  }
  return loss;
}

BaselineFit train_baseline(std::span<const FeatureVector> features, std::span<const int> labels,
                           const TrainBaselineConfig& cfg) {
  if (features.size() != labels.size()) throw_data_error("baseline: feature/label count mismatch");
  if (!(cfg.l2 >= 0.0)) throw_usage_error("baseline: l2 must be non-negative");
  std::size_t positives = 0;
  for (int y : labels) positives += y != 0 ? 1 : 0;
  if (positives == 0 || positives == labels.size()) {
    throw_data_error("baseline: training set must contain both classes");
  }

  BaselineFit fit;
  auto& m = fit.model;
  m.l2 = cfg.l2;
  const double n = static_cast<double>(features.size());
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    double mean = 0.0;
    for (const auto& f : features) mean += f[j];
    mean /= n;
    double var = 0.0;
    for (const auto& f : features) var += (f[j] - mean) * (f[j] - mean);
    var /= n;
    m.feature_mean[j] = mean;
    m.feature_scale[j] = var > 1e-24 ? std::sqrt(var) : 1.0;
  }
  std::vector<FeatureVector> x;
  x.reserve(features.size());
  for (const auto& f : features) x.push_back(standardize(f, m));

  const double step = 1.0 / (0.25 * static_cast<double>(kFeatureCount + 1) + cfg.l2);
  std::vector<double> grad;
  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    const double loss = logistic_loss(x, labels, m.weights, m.bias, cfg.l2, &grad);
    fit.loss_history.push_back(loss);
    double gnorm = 0.0;
    for (double g : grad) gnorm += g * g;
    if (std::sqrt(gnorm) < cfg.gradient_tolerance) break;
    for (std::size_t j = 0; j < kFeatureCount; ++j) m.weights[j] -= step * grad[j];
    m.bias -= step * grad[kFeatureCount];
  }
  return fit;
}

double baseline_probability(const BaselineModel& model, std::span<const double> window, double fs) {
  return model.probability(extract_features(window, fs));
}

}  // namespace seizcnn::shallow
