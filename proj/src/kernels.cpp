#include <atomic>
#include <cstdlib>
#include <string>

#include "sfree/core.hpp"
#include "sfree/kernels.hpp"

namespace sfree::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(SFREE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* pick_default() {
  const char* env = std::getenv("SFREE_KERNELS");
  if (env != nullptr && std::string(env) == "scalar") return &scalar_table();
#if defined(SFREE_HAVE_AVX2)
  if (cpu_has_avx2()) return &avx2_table();
#endif
  return &scalar_table();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{pick_default()};
  return slot;
}

}  // namespace

bool backend_available(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return cpu_has_avx2();
  }
  return false;
}

const KernelTable& table(Backend backend) {
  if (!backend_available(backend)) {
    throw ValidationError("kernel backend '" + std::string(backend_name(backend)) +
                          "' is not available on this machine");
  }
#if defined(SFREE_HAVE_AVX2)
  if (backend == Backend::avx2) return avx2_table();
#endif
  return scalar_table();
}

const KernelTable& active() { return *active_slot().load(std::memory_order_relaxed); }

void set_backend(Backend backend) { active_slot().store(&table(backend)); }

std::string_view backend_name(Backend backend) {
  return backend == Backend::avx2 ? "avx2" : "scalar";
}

}  // namespace sfree::kernels
