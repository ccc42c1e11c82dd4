#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "abelscroll/lattice_sum.hpp"

using namespace abelscroll;

namespace {

struct Batch {
  std::vector<double> a, b, w1, w2;
  LatticeTerms view() const { return {a, b, w1, w2}; }
};

Batch random_batch(std::mt19937_64& rng, std::size_t n, double phase_range) {
  std::uniform_real_distribution<double> mag(-60.0, 0.0);
  std::uniform_real_distribution<double> ph(-phase_range, phase_range);
  std::uniform_real_distribution<double> w(-40.0, 40.0);
  Batch out;
  for (std::size_t i = 0; i < n; ++i) {
    out.a.push_back(mag(rng));
    out.b.push_back(ph(rng));
    out.w1.push_back(w(rng));
    out.w2.push_back(w(rng));
  }
  return out;
}

double weighted_magnitude(const Batch& batch, const std::vector<double>& w) {
  double s = 0;
  for (std::size_t i = 0; i < batch.a.size(); ++i) s += std::abs(w[i]) * std::exp(batch.a[i]);
  return s;
}

}  // namespace

TEST_CASE("scalar kernel basics") {
  const Batch empty;
  const auto z = lattice_sum_scalar(empty.view());
  CHECK(z.value == std::complex<double>(0.0));
  CHECK(z.magnitude == 0.0);

  Batch one{{0.0}, {M_PI / 2}, {2.0}, {-1.0}};
  const auto s = lattice_sum_scalar(one.view());
  CHECK(s.value.real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s.value.imag() == doctest::Approx(1.0));
  CHECK(s.w1.imag() == doctest::Approx(2.0));
  CHECK(s.w2.imag() == doctest::Approx(-1.0));

  Batch ragged{{0.0, 1.0}, {0.0}, {0.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS(lattice_sum_scalar(ragged.view()));
}

TEST_CASE("dispatch") {
  CHECK(kernel_available(KernelIsa::scalar));
  CHECK(select_kernel(KernelIsa::scalar) == &lattice_sum_scalar);
  const KernelIsa isa = active_kernel_isa();
  CHECK(kernel_available(isa));
  CHECK(active_kernel() == select_kernel(isa));
  if (!kernel_available(KernelIsa::avx2)) {
    CHECK_THROWS(select_kernel(KernelIsa::avx2));
  }
}

#if defined(ABELSCROLL_WITH_AVX2)
TEST_CASE("avx2 kernel matches scalar kernel") {
  if (!kernel_available(KernelIsa::avx2)) {
    MESSAGE("AVX2 not supported on this CPU; equivalence test skipped");
    return;
  }
  std::mt19937_64 rng(314159);
  for (double phase_range : {4.0, 300.0, 1e5}) {
    for (std::size_t n : {1UL, 2UL, 3UL, 4UL, 5UL, 7UL, 8UL, 13UL, 64UL, 257UL}) {
      const Batch batch = random_batch(rng, n, phase_range);
      const auto s = lattice_sum_scalar(batch.view());
      const auto v = lattice_sum_avx2(batch.view());
      const double scale = s.magnitude;
      CHECK(std::abs(v.magnitude - s.magnitude) <= 1e-14 * scale);
      CHECK(std::abs(v.value - s.value) <= 1e-13 * scale);
      CHECK(std::abs(v.w1 - s.w1) <= 1e-13 * weighted_magnitude(batch, batch.w1));
      CHECK(std::abs(v.w2 - s.w2) <= 1e-13 * weighted_magnitude(batch, batch.w2));
    }
  }
}

TEST_CASE("avx2 exp and sincos are accurate term by term") {
  if (!kernel_available(KernelIsa::avx2)) return;
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> mag(-700.0, 700.0);
  std::uniform_real_distribution<double> ph(-2e4, 2e4);
  for (int i = 0; i < 2000; ++i) {
    const Batch one{{mag(rng)}, {ph(rng)}, {0.0}, {0.0}};
    const auto v = lattice_sum_avx2(one.view());
    const double e = std::exp(one.a[0]);
    const std::complex<double> expected(e * std::cos(one.b[0]), e * std::sin(one.b[0]));
    CHECK(std::abs(v.value - expected) <= 4e-15 * e);
    CHECK(std::abs(v.magnitude - e) <= 4e-15 * e);
  }
  // Far underflow contributes exactly zero.
  const Batch tiny{{-800.0, -2000.0}, {0.3, 1.0}, {1.0, 1.0}, {0.0, 0.0}};
  const auto t = lattice_sum_avx2(tiny.view());
  CHECK(t.value == std::complex<double>(0.0));
  CHECK(t.magnitude == 0.0);
}
#endif
