#include <cstdlib>
#include <stdexcept>
#include <string>

#include "abelscroll/lattice_sum.hpp"

namespace abelscroll {

std::string_view to_string(KernelIsa isa) {
  switch (isa) {
    case KernelIsa::scalar: return "scalar";
    case KernelIsa::avx2: return "avx2";
  }
  return "unknown";
}

bool kernel_available(KernelIsa isa) {
  switch (isa) {
    case KernelIsa::scalar: return true;
    case KernelIsa::avx2:
#if defined(ABELSCROLL_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

KernelIsa detect_kernel_isa() {
  const char* force = std::getenv("ABELSCROLL_FORCE_SCALAR");
  if (force != nullptr && std::string(force) != "0") return KernelIsa::scalar;
  return kernel_available(KernelIsa::avx2) ? KernelIsa::avx2 : KernelIsa::scalar;
}

LatticeSumKernel select_kernel(KernelIsa isa) {
  if (!kernel_available(isa)) {
    throw std::invalid_argument("lattice-sum kernel '" + std::string(to_string(isa)) +
                                "' is not available on this build or CPU");
  }
  switch (isa) {
    case KernelIsa::scalar: return &lattice_sum_scalar;
    case KernelIsa::avx2:
#if defined(ABELSCROLL_WITH_AVX2)
      return &lattice_sum_avx2;
#else
      break;
#endif
  }
  return &lattice_sum_scalar;
}

KernelIsa active_kernel_isa() {
  static const KernelIsa isa = detect_kernel_isa();
  return isa;
}

LatticeSumKernel active_kernel() {
  static const LatticeSumKernel kernel = select_kernel(active_kernel_isa());
  return kernel;
}

}  // namespace abelscroll
