#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace seizcnn {

/// Portable random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Standard distributions are implementation-defined, so all
/// conversions are done here:
///   uniform()      (x >> 11) * 2^-53, in [0, 1)
///   normal()       Box-Muller on two uniforms, second variate cached
///   uniform_index  floor(uniform() * n)
/// Same seed gives the same stream with any conforming standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal();

  std::size_t uniform_index(std::size_t n) {
    auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  // Fisher-Yates with uniform_index.
  template <typename It>
  void shuffle(It first, It last) {
    auto n = static_cast<std::size_t>(last - first);
    for (std::size_t i = n; i > 1; --i) {
      std::size_t j = uniform_index(i);
      using std::swap;
      swap(first[i - 1], first[j]);
    }
  }

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// SplitMix64 finalizer, used to derive independent child seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Child seed from a master seed and a string key (FNV-1a of the key, then mixed).
std::uint64_t derive_seed(std::uint64_t master, std::string_view key);

}  // namespace seizcnn
