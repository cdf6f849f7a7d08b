#include "seizcnn/eval/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "seizcnn/error.hpp"
#include "seizcnn/eval/evaluate.hpp"

namespace seizcnn::eval {

std::string to_string(FusionMode mode) {
  return mode == FusionMode::arithmetic ? "arithmetic" : "geometric";
}

FusionMode parse_fusion_mode(const std::string& text) {
  if (text == "arithmetic") return FusionMode::arithmetic;
  if (text == "geometric") return FusionMode::geometric;
  throw_usage_error("unknown fusion mode '" + text + "' (arithmetic | geometric)");
}

void FusionConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw_usage_error("fusion alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
}

double fuse(double p_cnn, double p_svm, const FusionConfig& cfg) {
  cfg.validate();
  if (cfg.alpha == 1.0) return p_cnn;
  if (cfg.alpha == 0.0) return p_svm;
  if (cfg.mode == FusionMode::arithmetic) return cfg.alpha * p_cnn + (1.0 - cfg.alpha) * p_svm;
  const double a = std::max(p_cnn, 1e-12);
  const double b = std::max(p_svm, 1e-12);
  return std::pow(a, cfg.alpha) * std::pow(b, 1.0 - cfg.alpha);
}

std::vector<double> fuse(std::span<const double> p_cnn, std::span<const double> p_svm,
                         const FusionConfig& cfg) {
  cfg.validate();
  if (p_cnn.size() != p_svm.size()) throw_data_error("fuse: traces differ in length");
  std::vector<double> out(p_cnn.size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = fuse(p_cnn[t], p_svm[t], cfg);
  return out;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

std::vector<SweepRow> alpha_sweep(std::span<const SubjectTraces> subjects,
                                  std::span<const double> grid, const PostProcessConfig& post) {
  if (subjects.size() < 2) throw_data_error("alpha_sweep: need at least two subjects");
  std::vector<SweepRow> rows;
  for (auto mode : {FusionMode::arithmetic, FusionMode::geometric}) {
    for (double alpha : grid) {
      const FusionConfig cfg{alpha, mode};
      std::vector<double> aucs, auc90s, sens;
      for (const auto& s : subjects) {
        const auto fused = fuse(s.cnn, s.svm, cfg);
        const auto m = evaluate_trace(fused, s.labels, post);
        aucs.push_back(m.auc);
        auc90s.push_back(m.auc90);
        sens.push_back(m.sensitivity_at_fdh);
      }
      rows.push_back({mode, alpha, mean_ci(aucs), mean_ci(auc90s), mean_ci(sens)});
    }
  }
  return rows;
}

}  // namespace seizcnn::eval
