// Built with -mavx2 -mfma; only called after a runtime CPU check.
#include <immintrin.h>

#include "fk/simd.hpp"

namespace fk::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

std::complex<double> dot2(CView a, CView b, std::size_t n) {
  __m256d sr = _mm256_setzero_pd(), si = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d ar = _mm256_loadu_pd(a.re + k), ai = _mm256_loadu_pd(a.im + k);
    const __m256d br = _mm256_loadu_pd(b.re + k), bi = _mm256_loadu_pd(b.im + k);
    sr = _mm256_fmadd_pd(ar, br, sr);
    sr = _mm256_fnmadd_pd(ai, bi, sr);
    si = _mm256_fmadd_pd(ar, bi, si);
    si = _mm256_fmadd_pd(ai, br, si);
  }
  std::complex<double> s{hsum(sr), hsum(si)};
  return s + scalar::dot2({a.re + k, a.im + k}, {b.re + k, b.im + k}, n - k);
}

std::complex<double> dot3(CView a, CView b, CView c, std::size_t n) {
  __m256d sr = _mm256_setzero_pd(), si = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d ar = _mm256_loadu_pd(a.re + k), ai = _mm256_loadu_pd(a.im + k);
    const __m256d br = _mm256_loadu_pd(b.re + k), bi = _mm256_loadu_pd(b.im + k);
    const __m256d cr = _mm256_loadu_pd(c.re + k), ci = _mm256_loadu_pd(c.im + k);
    const __m256d tr = _mm256_fnmadd_pd(ai, bi, _mm256_mul_pd(ar, br));
    const __m256d ti = _mm256_fmadd_pd(ai, br, _mm256_mul_pd(ar, bi));
    sr = _mm256_fmadd_pd(tr, cr, sr);
    sr = _mm256_fnmadd_pd(ti, ci, sr);
    si = _mm256_fmadd_pd(tr, ci, si);
    si = _mm256_fmadd_pd(ti, cr, si);
  }
  std::complex<double> s{hsum(sr), hsum(si)};
  return s + scalar::dot3({a.re + k, a.im + k}, {b.re + k, b.im + k}, {c.re + k, c.im + k}, n - k);
}

}  // namespace fk::simd::avx2
