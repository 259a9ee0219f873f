#pragma once

// Inner-loop kernels with a scalar reference and an AVX2/FMA variant.
//
// The variant is chosen once at startup from the CPU feature bits; setting
// FBO_LAB_SIMD=scalar in the environment forces the reference path. Both
// variants use a fixed reduction order, so results are bit-stable for a
// given variant (they differ from each other only by rounding).

#include <complex>
#include <cstddef>
#include <span>

namespace fbo::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();
// Test hook; throws if the requested variant is unavailable on this CPU/build.
void force_isa(Isa isa);

// sum_i a[i] * b[i]
cplx dot(const cplx* a, const cplx* b, std::size_t n);
// sum_i w[i] * |c[i]|^2
double weighted_energy(const cplx* c, const double* w, std::size_t n);

inline double weighted_energy(std::span<const cplx> c, std::span<const double> w) {
    return weighted_energy(c.data(), w.data(), c.size() < w.size() ? c.size() : w.size());
}

namespace scalar {
cplx dot(const cplx* a, const cplx* b, std::size_t n);
double weighted_energy(const cplx* c, const double* w, std::size_t n);
} // namespace scalar

#if defined(FBO_HAVE_AVX2_KERNELS) || defined(FBO_DECLARE_AVX2_KERNELS)
namespace avx2 {
cplx dot(const cplx* a, const cplx* b, std::size_t n);
double weighted_energy(const cplx* c, const double* w, std::size_t n);
} // namespace avx2
#endif

} // namespace fbo::simd
