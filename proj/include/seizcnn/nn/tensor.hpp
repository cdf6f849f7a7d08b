#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace seizcnn::nn {

/// Dense batch x channels x length array, row-major with length fastest.
class Tensor {
public:
  Tensor() = default;
  Tensor(std::size_t batch, std::size_t channels, std::size_t length, double fill = 0.0);

  std::size_t batch() const noexcept { return batch_; }
  std::size_t channels() const noexcept { return channels_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& operator()(std::size_t b, std::size_t c, std::size_t t) {
    return values_[(b * channels_ + c) * length_ + t];
  }
  double operator()(std::size_t b, std::size_t c, std::size_t t) const {
    return values_[(b * channels_ + c) * length_ + t];
  }

  std::span<double> row(std::size_t b, std::size_t c) {
    return {values_.data() + (b * channels_ + c) * length_, length_};
  }
  std::span<const double> row(std::size_t b, std::size_t c) const {
    return {values_.data() + (b * channels_ + c) * length_, length_};
  }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  bool same_shape(const Tensor& other) const noexcept {
    return batch_ == other.batch_ && channels_ == other.channels_ && length_ == other.length_;
  }

  std::string shape_string() const;

private:
  std::size_t batch_ = 0;
  std::size_t channels_ = 0;
  std::size_t length_ = 0;
  std::vector<double> values_;
};

}  // namespace seizcnn::nn
