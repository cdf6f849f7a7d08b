#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace seizcnn::dsp {

/// Linear-phase FIR band-pass, designed as the difference of two
/// Hamming-windowed sinc low-pass filters, each normalized to unit DC gain.
/// The difference therefore has exactly zero gain at DC.
///
/// With 1025 taps at 256 Hz the transition bands are about 0.8 Hz wide, which
/// keeps 1-12 Hz within +-1 dB while a 0.5 Hz low edge still rejects DC.
struct FilterSpec {
  double low_cut_hz = 0.5;
  double high_cut_hz = 12.8;
  std::size_t taps = 1025;  // odd, so the group delay is an integer

  void validate(double fs) const;
};

std::vector<double> design_bandpass(double fs, const FilterSpec& spec);

/// Zero-phase application of the FIR: the (taps - 1) / 2 sample group delay
/// is compensated and the signal is treated as zero outside its support, so
/// output length equals input length. The first and last (taps - 1) / 2
/// samples (2 s at 256 Hz) carry the edge transient.
std::vector<double> bandpass(std::span<const double> signal, double fs, const FilterSpec& spec);

/// Keeps every (fs_in / fs_out)-th sample starting with the first. The
/// input must already be band-limited below fs_out / 2.
std::vector<double> decimate(std::span<const double> signal, double fs_in, double fs_out);

/// bandpass followed by decimate, evaluating the filter only at the kept
/// samples. Bit-identical to the two-step chain.
std::vector<double> bandpass_decimate(std::span<const double> signal, double fs_in,
                                      double fs_out, const FilterSpec& spec);

/// Integer decimation factor fs_in / fs_out; throws unless it is exact.
std::size_t decimation_factor(double fs_in, double fs_out);

}  // namespace seizcnn::dsp
