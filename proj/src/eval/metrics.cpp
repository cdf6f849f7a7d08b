#include "seizcnn/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>

#include "seizcnn/error.hpp"
#include "seizcnn/eval/postprocess.hpp"

namespace seizcnn::eval {

namespace {

void check_aligned(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw_data_error(std::string(what) + ": sequences differ in length (" + std::to_string(a) +
                     " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

RocCurve roc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  check_aligned(scores.size(), labels.size(), "roc");
  std::size_t pos = 0;
  for (auto l : labels) pos += l != 0 ? 1 : 0;
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) throw_data_error("roc: labels must contain both classes");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  const double inf = std::numeric_limits<double>::infinity();
  const double p = static_cast<double>(pos);
  const double q = static_cast<double>(neg);
  std::vector<RocPoint> desc{{inf, 0.0, 1.0}};
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double s = scores[order[i]];
    while (i < order.size() && scores[order[i]] == s) {
      if (labels[order[i]] != 0) ++tp; else ++fp;
      ++i;
    }
    desc.push_back({s, static_cast<double>(tp) / p, static_cast<double>(neg - fp) / q});
  }
  desc.push_back({-inf, 1.0, 0.0});
  std::reverse(desc.begin(), desc.end());
  return RocCurve{std::move(desc)};
}

double auc(const RocCurve& curve) {
  const auto& pts = curve.points;
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    area += (pts[i].specificity - pts[i - 1].specificity) *
            (pts[i].sensitivity + pts[i - 1].sensitivity) * 0.5;
  }
  return 100.0 * area;
}

double auc90(const RocCurve& curve) {
  // Walk from the strict end in false-positive-rate coordinates u = 1 - spec.
  constexpr double kSpan = 0.1;
  const auto& pts = curve.points;
  double total = 0.0;
  for (std::size_t i = pts.size() - 1; i > 0; --i) {
    const double u1 = 1.0 - pts[i].specificity;
    const double s1 = pts[i].sensitivity;
    const double u2 = 1.0 - pts[i - 1].specificity;
    double s2 = pts[i - 1].sensitivity;
    if (u1 >= kSpan) break;
    double end = u2;
    if (u2 > kSpan) {
      s2 = s1 + (s2 - s1) * (kSpan - u1) / (u2 - u1);
      end = kSpan;
    }
    total += ((end - u1) / kSpan) * ((s1 + s2) * 50.0);
    if (u2 >= kSpan) break;
  }
  return total;
}

void write_roc_csv(std::ostream& os, const RocCurve& curve) {
  os << "threshold,sensitivity,specificity\n" << std::setprecision(17);
  for (const auto& p : curve.points) {
    os << p.threshold << "," << p.sensitivity << "," << p.specificity << "\n";
  }
}

double fd_per_hour(std::span<const std::uint8_t> decisions, std::span<const std::uint8_t> labels) {
  check_aligned(decisions.size(), labels.size(), "fd_per_hour");
  if (decisions.empty()) throw_data_error("fd_per_hour: empty input");
  std::size_t false_events = 0;
  std::size_t t = 0;
  while (t < decisions.size()) {
    if (decisions[t] == 0) {
      ++t;
      continue;
    }
    bool hits_seizure = false;
    while (t < decisions.size() && decisions[t] != 0) {
      hits_seizure = hits_seizure || labels[t] != 0;
      ++t;
    }
    if (!hits_seizure) ++false_events;
  }
  const double hours = static_cast<double>(decisions.size()) / 3600.0;
  return static_cast<double>(false_events) / hours;
}

double sensitivity_pct(std::span<const std::uint8_t> decisions, std::span<const std::uint8_t> labels) {
  check_aligned(decisions.size(), labels.size(), "sensitivity");
  std::size_t pos = 0;
  std::size_t hit = 0;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    if (labels[t] != 0) {
      ++pos;
      hit += decisions[t] != 0 ? 1 : 0;
    }
  }
  if (pos == 0) throw_data_error("sensitivity: no seizure seconds");
  return 100.0 * static_cast<double>(hit) / static_cast<double>(pos);
}

double specificity_pct(std::span<const std::uint8_t> decisions, std::span<const std::uint8_t> labels) {
  check_aligned(decisions.size(), labels.size(), "specificity");
  std::size_t neg = 0;
  std::size_t ok = 0;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    if (labels[t] == 0) {
      ++neg;
      ok += decisions[t] == 0 ? 1 : 0;
    }
  }
  if (neg == 0) throw_data_error("specificity: no non-seizure seconds");
  return 100.0 * static_cast<double>(ok) / static_cast<double>(neg);
}

SensitivityAtFdh sensitivity_at_fdh(std::span<const double> smoothed,
                                    std::span<const std::uint8_t> labels, double max_fdh,
                                    std::size_t collar_s) {
  check_aligned(smoothed.size(), labels.size(), "sensitivity_at_fdh");
  std::vector<double> thresholds;
  for (double v : smoothed) {
    if (v > 0.0) thresholds.push_back(v);
  }
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  SensitivityAtFdh best;
  for (double h : thresholds) {
    const auto d = detect(smoothed, h, collar_s);
    const double rate = fd_per_hour(d, labels);
    if (rate > max_fdh) break;
    best = {sensitivity_pct(d, labels), h, rate, true};
  }
  return best;
}

}  // namespace seizcnn::eval
