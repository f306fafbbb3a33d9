#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Complex reductions on split (real, imaginary) arrays. The scalar kernels
// are the reference; vector kernels are picked at runtime.
namespace fk::simd {

enum class Backend { scalar, avx2, neon };

struct CView {
  const double* re;
  const double* im;
};

using Dot2Fn = std::complex<double> (*)(CView a, CView b, std::size_t n);
using Dot3Fn = std::complex<double> (*)(CView a, CView b, CView c, std::size_t n);

// sum_k a_k b_k
std::complex<double> dot2(CView a, CView b, std::size_t n);
// sum_k a_k b_k c_k
std::complex<double> dot3(CView a, CView b, CView c, std::size_t n);

namespace scalar {
std::complex<double> dot2(CView a, CView b, std::size_t n);
std::complex<double> dot3(CView a, CView b, CView c, std::size_t n);
}  // namespace scalar

bool available(Backend b);
Backend active();
// Forces a backend (tests, benchmarks); ignored if unavailable. Returns the one in use.
Backend select(Backend b);
Dot2Fn dot2_for(Backend b);
Dot3Fn dot3_for(Backend b);
std::string name(Backend b);

}  // namespace fk::simd
