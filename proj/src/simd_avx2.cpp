// Compiled with -mavx2 -mfma; only reached after the runtime CPU check.
#include "fbo/simd.hpp"

#include <immintrin.h>

namespace fbo::simd::avx2 {

namespace {
inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}
} // namespace

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    // prod accumulates [ar*br, ai*bi, ...], cross accumulates [ar*bi, ai*br, ...].
    __m256d prod0 = _mm256_setzero_pd(), prod1 = _mm256_setzero_pd();
    __m256d cross0 = _mm256_setzero_pd(), cross1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
        __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
        __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
        prod0 = _mm256_fmadd_pd(va0, vb0, prod0);
        prod1 = _mm256_fmadd_pd(va1, vb1, prod1);
        cross0 = _mm256_fmadd_pd(va0, _mm256_permute_pd(vb0, 0b0101), cross0);
        cross1 = _mm256_fmadd_pd(va1, _mm256_permute_pd(vb1, 0b0101), cross1);
    }
    __m256d prod = _mm256_add_pd(prod0, prod1);
    __m256d cross = _mm256_add_pd(cross0, cross1);
    alignas(32) double p[4], c[4];
    _mm256_store_pd(p, prod);
    _mm256_store_pd(c, cross);
    double re = (p[0] - p[1]) + (p[2] - p[3]);
    double im = (c[0] + c[1]) + (c[2] + c[3]);
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

double weighted_energy(const cplx* c, const double* w, std::size_t n) {
    const double* pc = reinterpret_cast<const double*>(c);
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d c0 = _mm256_loadu_pd(pc + 2 * i);
        __m256d c1 = _mm256_loadu_pd(pc + 2 * i + 4);
        __m256d w01 = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w + i)), 0b01010000);
        __m256d w23 = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w + i + 2)), 0b01010000);
        acc0 = _mm256_fmadd_pd(w01, _mm256_mul_pd(c0, c0), acc0);
        acc1 = _mm256_fmadd_pd(w23, _mm256_mul_pd(c1, c1), acc1);
    }
    double total = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) total += w[i] * std::norm(c[i]);
    return total;
}

} // namespace fbo::simd::avx2
