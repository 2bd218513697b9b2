#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// where the CPU supports it, an AVX2 version; the active table is picked once
// at first use from CPUID and can be overridden with SFREE_KERNELS=scalar|avx2
// or set_backend(). All backends must produce bit-identical results.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace sfree::kernels {

enum class Backend { scalar, avx2 };

struct KernelTable {
  Backend backend;
  // dst[i] += src[i]; spans have equal length. Wraps on overflow; callers
  // guarantee totals fit.
  void (*accumulate)(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
  // sum a[i]*b[i] mod 2^64; spans have equal length.
  std::uint64_t (*dot)(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
  // dst |= src << shift, treating both as little-endian bit vectors. Bits
  // shifted past the end of dst are dropped.
  void (*or_shifted)(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
                     std::size_t shift);
  std::uint64_t (*popcount)(std::span<const std::uint64_t> words);
};

const KernelTable& scalar_table();
bool backend_available(Backend backend);
/// Throws ValidationError when the backend is not compiled in or not
/// supported by this CPU.
const KernelTable& table(Backend backend);

const KernelTable& active();
void set_backend(Backend backend);
std::string_view backend_name(Backend backend);

inline void accumulate(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  active().accumulate(dst, src);
}
inline std::uint64_t dot(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return active().dot(a, b);
}
inline void or_shifted(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
                       std::size_t shift) {
  active().or_shifted(dst, src, shift);
}
inline std::uint64_t popcount(std::span<const std::uint64_t> words) {
  return active().popcount(words);
}

#if defined(SFREE_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace sfree::kernels
