#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seizcnn/eval/postprocess.hpp"
#include "seizcnn/eval/stats.hpp"

namespace seizcnn::eval {

enum class FusionMode { arithmetic, geometric };

std::string to_string(FusionMode mode);
FusionMode parse_fusion_mode(const std::string& text);

struct FusionConfig {
  double alpha = 0.5;
  FusionMode mode = FusionMode::arithmetic;

  void validate() const;
};

/// alpha weights the CNN probability. Geometric mode floors both inputs at
/// 1e-12. alpha 1 and 0 return the corresponding input unchanged.
double fuse(double p_cnn, double p_svm, const FusionConfig& cfg);
std::vector<double> fuse(std::span<const double> p_cnn, std::span<const double> p_svm,
                         const FusionConfig& cfg);

/// Raw per-second traces of one subject, both classifiers, plus labels.
struct SubjectTraces {
  std::string subject_id;
  std::vector<double> cnn;
  std::vector<double> svm;
  std::vector<std::uint8_t> labels;
};

struct SweepRow {
  FusionMode mode;
  double alpha;
  MeanCi auc;
  MeanCi auc90;
  MeanCi sensitivity_at_fdh;
};

std::vector<double> default_alpha_grid();

/// Every (mode, alpha) pair: fuse per subject, post-process, score, then
/// aggregate across subjects. Rows are ordered arithmetic first, then by alpha.
std::vector<SweepRow> alpha_sweep(std::span<const SubjectTraces> subjects,
                                  std::span<const double> grid, const PostProcessConfig& post);

}  // namespace seizcnn::eval
