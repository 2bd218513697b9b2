#include <bit>

#include "sfree/kernels.hpp"

namespace sfree::kernels {
namespace {

void accumulate_scalar(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
}

std::uint64_t dot_scalar(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * b[i];
  return total;
}

void or_shifted_scalar(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
                       std::size_t shift) {
  const std::size_t word_shift = shift / 64;
  const unsigned bit_shift = shift % 64;
  for (std::size_t j = word_shift; j < dst.size(); ++j) {
    const std::size_t i = j - word_shift;
    std::uint64_t word = 0;
    if (i < src.size()) word = src[i] << bit_shift;
    if (bit_shift != 0 && i >= 1 && i - 1 < src.size()) word |= src[i - 1] >> (64 - bit_shift);
    if (i > src.size()) break;
    dst[j] |= word;
  }
}

std::uint64_t popcount_scalar(std::span<const std::uint64_t> words) {
  std::uint64_t total = 0;
  for (auto w : words) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Backend::scalar, accumulate_scalar, dot_scalar, or_shifted_scalar,
                                 popcount_scalar};
  return table;
}

}  // namespace sfree::kernels
