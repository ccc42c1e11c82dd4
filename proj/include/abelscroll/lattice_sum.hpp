// Inner loop of the theta series: sums of exp(a_t) * (cos b_t + i sin b_t)
// together with two real-weighted companions used for partial derivatives.
//
// A scalar reference kernel is always available. An AVX2/FMA kernel is
// compiled on x86-64 and selected at runtime when the CPU supports it; both
// must agree to a few ulps of the summed magnitude (see tests).
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace abelscroll {

struct LatticeSums {
  std::complex<double> value;  // sum e^{a} cis(b)
  std::complex<double> w1;     // sum w1 e^{a} cis(b)
  std::complex<double> w2;     // sum w2 e^{a} cis(b)
  double magnitude = 0.0;      // sum e^{a}, for error scaling
};

/// All spans must share one length. Entries of log_mag are expected in
/// [-745, 709]; smaller values contribute zero.
struct LatticeTerms {
  std::span<const double> log_mag;
  std::span<const double> phase;
  std::span<const double> weight1;
  std::span<const double> weight2;
};

using LatticeSumKernel = LatticeSums (*)(const LatticeTerms&);

enum class KernelIsa { scalar, avx2 };

std::string_view to_string(KernelIsa isa);

LatticeSums lattice_sum_scalar(const LatticeTerms& terms);
#if defined(ABELSCROLL_WITH_AVX2)
LatticeSums lattice_sum_avx2(const LatticeTerms& terms);
#endif

/// True if `isa` was compiled in and the running CPU supports it.
bool kernel_available(KernelIsa isa);

/// Best available ISA, unless ABELSCROLL_FORCE_SCALAR is set in the
/// environment (any value other than "0").
KernelIsa detect_kernel_isa();

/// Throws std::invalid_argument if `isa` is not available.
LatticeSumKernel select_kernel(KernelIsa isa);

/// Kernel chosen once per process from detect_kernel_isa().
LatticeSumKernel active_kernel();
KernelIsa active_kernel_isa();

}  // namespace abelscroll
