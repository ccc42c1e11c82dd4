// AVX2/FMA lattice-sum kernel. Four terms per iteration with vectorized
// exp and sincos; accuracy is within a few ulps of libm on the argument
// ranges produced by the theta evaluator (|phase| well below 1e6).
#include <immintrin.h>

#include <array>
#include <stdexcept>

#include "abelscroll/lattice_sum.hpp"

namespace abelscroll {

namespace {

constexpr double kLog2e = 1.4426950408889634;
constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;
constexpr double kTwoOverPi = 0.63661977236758134308;
constexpr double kPiOver2Hi = 1.5707963267948966;
constexpr double kPiOver2Lo = 6.123233995736766e-17;
constexpr double kExpFloor = -708.0;
// Adding then subtracting 1.5*2^52 leaves a round-to-nearest integer in the
// low mantissa bits.
constexpr double kIntMagic = 6755399441055744.0;

inline __m256i to_int64(__m256d rounded) {
  const __m256d magic = _mm256_set1_pd(kIntMagic);
  return _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(rounded, magic)),
                          _mm256_castpd_si256(magic));
}

inline __m256d exp_pd(__m256d x) {
  const __m256d underflow = _mm256_cmp_pd(x, _mm256_set1_pd(kExpFloor), _CMP_LT_OQ);
  x = _mm256_max_pd(x, _mm256_set1_pd(kExpFloor));
  x = _mm256_min_pd(x, _mm256_set1_pd(709.0));

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kLog2e)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Hi), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Lo), r);

  // Taylor series to r^13; |r| <= ln2/2.
  static constexpr std::array<double, 14> inv_fact = {
      1.0,
      1.0,
      1.0 / 2,
      1.0 / 6,
      1.0 / 24,
      1.0 / 120,
      1.0 / 720,
      1.0 / 5040,
      1.0 / 40320,
      1.0 / 362880,
      1.0 / 3628800,
      1.0 / 39916800,
      1.0 / 479001600,
      1.0 / 6227020800.0,
  };
  __m256d p = _mm256_set1_pd(inv_fact[13]);
  for (int i = 12; i >= 0; --i) {
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(inv_fact[static_cast<std::size_t>(i)]));
  }

  __m256i bits = _mm256_add_epi64(to_int64(n), _mm256_set1_epi64x(1023));
  bits = _mm256_slli_epi64(bits, 52);
  const __m256d result = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
  return _mm256_blendv_pd(result, _mm256_setzero_pd(), underflow);
}

inline void sincos_pd(__m256d x, __m256d& sin_out, __m256d& cos_out) {
  const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPiOver2Hi), x);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPiOver2Lo), r);
  const __m256d r2 = _mm256_mul_pd(r, r);

  // sin r = r * S(r^2), cos r = C(r^2); Taylor to r^17 and r^16, |r| <= pi/4.
  __m256d s = _mm256_set1_pd(1.0 / 355687428096000.0);        // 1/17!
  s = _mm256_fmadd_pd(s, r2, _mm256_set1_pd(-1.0 / 1307674368000.0));
  s = _mm256_fmadd_pd(s, r2, _mm256_set1_pd(1.0 / 6227020800.0));
  s = _mm256_fmadd_pd(s, r2, _mm256_set1_pd(-1.0 / 39916800.0));
  s = _mm256_fmadd_pd(s, r2, _mm256_set1_pd(1.0 / 362880.0));
  s = _mm256_fmadd_pd(s, r2, _mm256_set1_pd(-1.0 / 5040.0));
  s = _mm256_fmadd_pd(s, r2, _mm256_set1_pd(1.0 / 120.0));
  s = _mm256_fmadd_pd(s, r2, _mm256_set1_pd(-1.0 / 6.0));
  s = _mm256_fmadd_pd(_mm256_mul_pd(s, r2), r, r);

  __m256d c = _mm256_set1_pd(1.0 / 20922789888000.0);         // 1/16!
  c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(-1.0 / 87178291200.0));
  c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(1.0 / 479001600.0));
  c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(-1.0 / 3628800.0));
  c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(1.0 / 40320.0));
  c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(-1.0 / 720.0));
  c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(1.0 / 24.0));
  c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(-0.5));
  c = _mm256_fmadd_pd(c, r2, _mm256_set1_pd(1.0));

  // Quadrant q mod 4: sin = {s, c, -s, -c}, cos = {c, -s, -c, s}.
  const __m256i qi = to_int64(q);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d swap =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(qi, one), one));
  const __m256d sin_sign =
      _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(qi, two), 62));
  const __m256d cos_sign = _mm256_castsi256_pd(
      _mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(qi, one), two), 62));

  sin_out = _mm256_xor_pd(_mm256_blendv_pd(s, c, swap), sin_sign);
  cos_out = _mm256_xor_pd(_mm256_blendv_pd(c, s, swap), cos_sign);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

LatticeSums lattice_sum_avx2(const LatticeTerms& terms) {
  const std::size_t n = terms.log_mag.size();
  if (terms.phase.size() != n || terms.weight1.size() != n || terms.weight2.size() != n) {
    throw std::invalid_argument("lattice_sum: term arrays differ in length");
  }

  __m256d vr = _mm256_setzero_pd(), vi = _mm256_setzero_pd();
  __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
  __m256d br = _mm256_setzero_pd(), bi = _mm256_setzero_pd();
  __m256d mag = _mm256_setzero_pd();

  auto accumulate = [&](__m256d a, __m256d b, __m256d w1, __m256d w2) {
    const __m256d e = exp_pd(a);
    __m256d sn, cs;
    sincos_pd(b, sn, cs);
    const __m256d re = _mm256_mul_pd(e, cs);
    const __m256d im = _mm256_mul_pd(e, sn);
    vr = _mm256_add_pd(vr, re);
    vi = _mm256_add_pd(vi, im);
    ar = _mm256_fmadd_pd(w1, re, ar);
    ai = _mm256_fmadd_pd(w1, im, ai);
    br = _mm256_fmadd_pd(w2, re, br);
    bi = _mm256_fmadd_pd(w2, im, bi);
    mag = _mm256_add_pd(mag, e);
  };

  std::size_t t = 0;
  for (; t + 4 <= n; t += 4) {
    accumulate(_mm256_loadu_pd(terms.log_mag.data() + t), _mm256_loadu_pd(terms.phase.data() + t),
               _mm256_loadu_pd(terms.weight1.data() + t),
               _mm256_loadu_pd(terms.weight2.data() + t));
  }
  if (t < n) {
    alignas(32) std::array<double, 4> a{-1000.0, -1000.0, -1000.0, -1000.0};
    alignas(32) std::array<double, 4> b{}, w1{}, w2{};
    for (std::size_t i = 0; t + i < n; ++i) {
      a[i] = terms.log_mag[t + i];
      b[i] = terms.phase[t + i];
      w1[i] = terms.weight1[t + i];
      w2[i] = terms.weight2[t + i];
    }
    accumulate(_mm256_load_pd(a.data()), _mm256_load_pd(b.data()), _mm256_load_pd(w1.data()),
               _mm256_load_pd(w2.data()));
  }

  return LatticeSums{{hsum(vr), hsum(vi)}, {hsum(ar), hsum(ai)}, {hsum(br), hsum(bi)}, hsum(mag)};
}

}  // namespace abelscroll
