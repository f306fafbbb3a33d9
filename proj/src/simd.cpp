#include "fk/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>
#define FK_HAVE_NEON 1
#endif

namespace fk::simd {

#if defined(__x86_64__) || defined(__i386__)
#define FK_HAVE_AVX2_TU 1
namespace avx2 {
std::complex<double> dot2(CView a, CView b, std::size_t n);
std::complex<double> dot3(CView a, CView b, CView c, std::size_t n);
}  // namespace avx2
#endif

namespace scalar {

std::complex<double> dot2(CView a, CView b, std::size_t n) {
  double sr = 0, si = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sr += a.re[k] * b.re[k] - a.im[k] * b.im[k];
    si += a.re[k] * b.im[k] + a.im[k] * b.re[k];
  }
  return {sr, si};
}

std::complex<double> dot3(CView a, CView b, CView c, std::size_t n) {
  double sr = 0, si = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double tr = a.re[k] * b.re[k] - a.im[k] * b.im[k];
    const double ti = a.re[k] * b.im[k] + a.im[k] * b.re[k];
    sr += tr * c.re[k] - ti * c.im[k];
    si += tr * c.im[k] + ti * c.re[k];
  }
  return {sr, si};
}

}  // namespace scalar

#ifdef FK_HAVE_NEON
namespace neon {

std::complex<double> dot2(CView a, CView b, std::size_t n) {
  float64x2_t sr = vdupq_n_f64(0), si = vdupq_n_f64(0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t ar = vld1q_f64(a.re + k), ai = vld1q_f64(a.im + k);
    const float64x2_t br = vld1q_f64(b.re + k), bi = vld1q_f64(b.im + k);
    sr = vfmaq_f64(sr, ar, br);
    sr = vfmsq_f64(sr, ai, bi);
    si = vfmaq_f64(si, ar, bi);
    si = vfmaq_f64(si, ai, br);
  }
  std::complex<double> s{vaddvq_f64(sr), vaddvq_f64(si)};
  CView ta{a.re + k, a.im + k}, tb{b.re + k, b.im + k};
  return s + scalar::dot2(ta, tb, n - k);
}

std::complex<double> dot3(CView a, CView b, CView c, std::size_t n) {
  float64x2_t sr = vdupq_n_f64(0), si = vdupq_n_f64(0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t ar = vld1q_f64(a.re + k), ai = vld1q_f64(a.im + k);
    const float64x2_t br = vld1q_f64(b.re + k), bi = vld1q_f64(b.im + k);
    const float64x2_t cr = vld1q_f64(c.re + k), ci = vld1q_f64(c.im + k);
    const float64x2_t tr = vfmsq_f64(vmulq_f64(ar, br), ai, bi);
    const float64x2_t ti = vfmaq_f64(vmulq_f64(ar, bi), ai, br);
    sr = vfmaq_f64(sr, tr, cr);
    sr = vfmsq_f64(sr, ti, ci);
    si = vfmaq_f64(si, tr, ci);
    si = vfmaq_f64(si, ti, cr);
  }
  std::complex<double> s{vaddvq_f64(sr), vaddvq_f64(si)};
  CView ta{a.re + k, a.im + k}, tb{b.re + k, b.im + k}, tc{c.re + k, c.im + k};
  return s + scalar::dot3(ta, tb, tc, n - k);
}

}  // namespace neon
#endif

bool available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#ifdef FK_HAVE_AVX2_TU
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::neon:
#ifdef FK_HAVE_NEON
      return true;
#else
      return false;
#endif
  }
  return false;
}

namespace {

Backend detect() {
  if (const char* env = std::getenv("FK_SIMD"); env && std::strcmp(env, "scalar") == 0) return Backend::scalar;
  if (available(Backend::avx2)) return Backend::avx2;
  if (available(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

Backend active() { return current().load(std::memory_order_relaxed); }

Backend select(Backend b) {
  if (available(b)) current().store(b);
  return active();
}

Dot2Fn dot2_for(Backend b) {
  switch (b) {
#ifdef FK_HAVE_AVX2_TU
    case Backend::avx2:
      return &avx2::dot2;
#endif
#ifdef FK_HAVE_NEON
    case Backend::neon:
      return &neon::dot2;
#endif
    default:
      return &scalar::dot2;
  }
}

Dot3Fn dot3_for(Backend b) {
  switch (b) {
#ifdef FK_HAVE_AVX2_TU
    case Backend::avx2:
      return &avx2::dot3;
#endif
#ifdef FK_HAVE_NEON
    case Backend::neon:
      return &neon::dot3;
#endif
    default:
      return &scalar::dot3;
  }
}

std::complex<double> dot2(CView a, CView b, std::size_t n) { return dot2_for(active())(a, b, n); }
std::complex<double> dot3(CView a, CView b, CView c, std::size_t n) { return dot3_for(active())(a, b, c, n); }

std::string name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "?";
}

}  // namespace fk::simd
