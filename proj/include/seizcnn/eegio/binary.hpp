#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "seizcnn/error.hpp"

namespace seizcnn::eegio {

inline std::uint32_t to_little_endian(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    v = ((v & 0xff) << 24) | ((v & 0xff00) << 8) | ((v >> 8) & 0xff00) | (v >> 24);
  }
  return v;
}

template <typename T>
void write_f32_le(std::ostream& os, std::span<const T> values) {
  std::vector<std::uint32_t> buf(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    buf[i] = to_little_endian(std::bit_cast<std::uint32_t>(static_cast<float>(values[i])));
  }
  os.write(reinterpret_cast<const char*>(buf.data()),
           static_cast<std::streamsize>(buf.size() * sizeof(std::uint32_t)));
}

template <typename T>
void write_f32_le(std::ostream& os, const std::vector<T>& values) {
  write_f32_le(os, std::span<const T>(values));
}

inline std::vector<float> read_f32_le(std::istream& is, std::size_t count) {
  std::vector<std::uint32_t> buf(count);
  is.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(count * sizeof(std::uint32_t)));
  if (static_cast<std::size_t>(is.gcount()) != count * sizeof(std::uint32_t)) {
    throw_data_error("unexpected end of binary payload");
  }
  std::vector<float> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = std::bit_cast<float>(to_little_endian(buf[i]));
  return out;
}

}  // namespace seizcnn::eegio
