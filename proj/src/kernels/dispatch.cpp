#include <atomic>

#include "backends.hpp"
#include "sepwidth/common/errors.hpp"

namespace sepwidth::kernels {
namespace {

Backend detect() { return avx2_supported() ? Backend::kAvx2 : Backend::kScalar; }

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

bool avx2_supported() {
#if defined(SEPWIDTH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported;
#else
  return false;
#endif
}

const KernelTable& table(Backend backend) {
#if defined(SEPWIDTH_HAVE_AVX2)
  if (backend == Backend::kAvx2 && avx2_supported()) return avx2_table();
#endif
  (void)backend;
  return scalar_table();
}

Backend active_backend() { return current().load(); }

void set_backend(Backend backend) {
  if (backend == Backend::kAvx2 && !avx2_supported()) {
    throw PreconditionError("AVX2 kernels are not available on this CPU");
  }
  current().store(backend);
}

std::string_view backend_name(Backend backend) {
  return backend == Backend::kAvx2 ? "avx2" : "scalar";
}

}  // namespace sepwidth::kernels
