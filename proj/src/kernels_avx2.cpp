// Compiled with -mavx2; only reached after a CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <bit>

#include "sfree/kernels.hpp"

namespace sfree::kernels {
namespace {

void accumulate_avx2(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  const std::size_t n = src.size();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
    const auto* s = reinterpret_cast<const __m256i*>(src.data() + i);
    const __m256i d0 = _mm256_loadu_si256(d);
    const __m256i d1 = _mm256_loadu_si256(d + 1);
    _mm256_storeu_si256(d, _mm256_add_epi64(d0, _mm256_loadu_si256(s)));
    _mm256_storeu_si256(d + 1, _mm256_add_epi64(d1, _mm256_loadu_si256(s + 1)));
  }
  for (; i < n; ++i) dst[i] += src[i];
}

// Low 64 bits of a 64x64 product from three 32x32->64 multiplies.
inline __m256i mullo_epi64(__m256i a, __m256i b) {
  const __m256i lo = _mm256_mul_epu32(a, b);
  const __m256i a_hi = _mm256_srli_epi64(a, 32);
  const __m256i b_hi = _mm256_srli_epi64(b, 32);
  const __m256i cross = _mm256_add_epi64(_mm256_mul_epu32(a_hi, b), _mm256_mul_epu32(a, b_hi));
  return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

std::uint64_t dot_avx2(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  const std::size_t n = a.size();
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    acc = _mm256_add_epi64(acc, mullo_epi64(va, vb));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

inline std::uint64_t shifted_word(std::span<const std::uint64_t> src, std::size_t i,
                                  unsigned bit_shift) {
  std::uint64_t word = 0;
  if (i < src.size()) word = src[i] << bit_shift;
  if (bit_shift != 0 && i >= 1 && i - 1 < src.size()) word |= src[i - 1] >> (64 - bit_shift);
  return word;
}

void or_shifted_avx2(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
                     std::size_t shift) {
  const std::size_t word_shift = shift / 64;
  const unsigned bit_shift = shift % 64;
  if (word_shift >= dst.size() || src.empty()) return;
  // Output word j draws on src[j - word_shift] and src[j - word_shift - 1].
  const std::size_t out_end = std::min(dst.size(), word_shift + src.size() + 1);
  const __m128i left = _mm_cvtsi32_si128(static_cast<int>(bit_shift));
  // A count of 64 zeroes the lane, which covers bit_shift == 0.
  const __m128i right = _mm_cvtsi32_si128(static_cast<int>(64 - bit_shift));

  std::size_t j = word_shift;
  dst[j] |= shifted_word(src, 0, bit_shift);
  ++j;
  // Vector body needs src[i-1 .. i+3] in range, i = j - word_shift.
  for (; j + 4 <= out_end && j - word_shift + 4 <= src.size(); j += 4) {
    const std::size_t i = j - word_shift;
    const __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    const __m256i prev = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i - 1));
    const __m256i word = _mm256_or_si256(_mm256_sll_epi64(cur, left), _mm256_srl_epi64(prev, right));
    auto* d = reinterpret_cast<__m256i*>(dst.data() + j);
    _mm256_storeu_si256(d, _mm256_or_si256(_mm256_loadu_si256(d), word));
  }
  for (; j < out_end; ++j) dst[j] |= shifted_word(src, j - word_shift, bit_shift);
}

// Nibble-table popcount with byte sums folded by SAD.
std::uint64_t popcount_avx2(std::span<const std::uint64_t> words) {
  const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  const std::size_t n = words.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words.data() + i));
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    const __m256i counts =
        _mm256_add_epi8(_mm256_shuffle_epi8(table, lo), _mm256_shuffle_epi8(table, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(counts, _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(words[i]));
  return total;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{Backend::avx2, accumulate_avx2, dot_avx2, or_shifted_avx2,
                                 popcount_avx2};
  return table;
}

}  // namespace sfree::kernels
