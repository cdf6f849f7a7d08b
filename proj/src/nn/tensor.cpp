#include "seizcnn/nn/tensor.hpp"

#include "seizcnn/error.hpp"

namespace seizcnn::nn {

Tensor::Tensor(std::size_t batch, std::size_t channels, std::size_t length, double fill)
    : batch_(batch), channels_(channels), length_(length) {
  if (batch == 0 || channels == 0 || length == 0) {
    throw_data_error("tensor dimensions must be positive, got " + std::to_string(batch) + "x" +
                     std::to_string(channels) + "x" + std::to_string(length));
  }
  values_.assign(batch * channels * length, fill);
}

std::string Tensor::shape_string() const {
  return std::to_string(batch_) + "x" + std::to_string(channels_) + "x" + std::to_string(length_);
}

}  // namespace seizcnn::nn
