#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

namespace seizcnn::shallow {

inline constexpr std::size_t kFeatureCount = 8;

/// Per-window descriptors:
///   0 rms                 sqrt(mean(x^2))
///   1 line_length         sum |x[i] - x[i-1]|
///   2 zero_crossings      sign changes of x - mean(x)
///   3 hjorth_mobility     sqrt(var(dx) / var(x))
///   4 hjorth_complexity   mobility(dx) / mobility(x)
///   5 spectral_edge_hz    frequency below which 80 % of the power lies
///   6 delta_power_ratio   power in 1-4 Hz over total power
///   7 spectral_entropy    Shannon entropy of the normalized power
///                         spectrum, divided by ln(bin count)
/// Spectral features use the Hann-windowed 256-point power spectrum of the
/// mean-removed window, DC bin excluded. Degenerate (zero-variance) windows
/// give 0 for the ratio-type features.
using FeatureVector = std::array<double, kFeatureCount>;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "rms",           "line_length",      "zero_crossings",    "hjorth_mobility",
    "hjorth_complexity", "spectral_edge_hz", "delta_power_ratio", "spectral_entropy"};

/// `window` must hold 256 samples at `fs` Hz.
FeatureVector extract_features(std::span<const double> window, double fs = 32.0);

}  // namespace seizcnn::shallow
