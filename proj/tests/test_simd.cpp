#include <doctest.h>

#include <random>
#include <vector>

#include "fk/simd.hpp"

using namespace fk::simd;

TEST_CASE("vector kernels match the scalar reference") {
  std::mt19937_64 g(9);
  std::normal_distribution<double> nd;
  for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
    if (!available(b)) continue;
    CAPTURE(name(b));
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 16u, 37u, 1000u}) {
      std::vector<double> ar(n), ai(n), br(n), bi(n), cr(n), ci(n);
      for (auto* v : {&ar, &ai, &br, &bi, &cr, &ci})
        for (auto& e : *v) e = nd(g);
      const CView a{ar.data(), ai.data()}, bb{br.data(), bi.data()}, c{cr.data(), ci.data()};
      const auto r2 = scalar::dot2(a, bb, n), v2 = dot2_for(b)(a, bb, n);
      const auto r3 = scalar::dot3(a, bb, c, n), v3 = dot3_for(b)(a, bb, c, n);
      double mag2 = 0, mag3 = 0;
      for (std::size_t k = 0; k < n; ++k) {
        mag2 += std::hypot(ar[k], ai[k]) * std::hypot(br[k], bi[k]);
        mag3 += std::hypot(ar[k], ai[k]) * std::hypot(br[k], bi[k]) * std::hypot(cr[k], ci[k]);
      }
      CHECK(std::abs(r2 - v2) <= 1e-14 * (mag2 + 1));
      CHECK(std::abs(r3 - v3) <= 1e-14 * (mag3 + 1));
    }
  }
}

TEST_CASE("scalar reference against a naive complex loop") {
  std::vector<double> ar{1, 2, 3}, ai{0, -1, 0.5}, br{2, 0, 1}, bi{1, 1, -1};
  std::complex<double> s = 0;
  for (int k = 0; k < 3; ++k) s += std::complex<double>(ar[k], ai[k]) * std::complex<double>(br[k], bi[k]);
  const auto r = scalar::dot2({ar.data(), ai.data()}, {br.data(), bi.data()}, 3);
  CHECK(r.real() == doctest::Approx(s.real()));
  CHECK(r.imag() == doctest::Approx(s.imag()));
}

TEST_CASE("backend selection") {
  CHECK(available(Backend::scalar));
  const Backend before = active();
  CHECK(select(Backend::scalar) == Backend::scalar);
  CHECK(active() == Backend::scalar);
  select(before);
  CHECK(active() == before);
  CHECK(name(Backend::avx2) == "avx2");
}
