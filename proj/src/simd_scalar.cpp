#include "fbo/simd.hpp"

namespace fbo::simd::scalar {

// Four interleaved partial sums mirror the lane layout of the vector path.
cplx dot(const cplx* a, const cplx* b, std::size_t n) {
    double re[2] = {0.0, 0.0}, im[2] = {0.0, 0.0};
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        for (int l = 0; l < 2; ++l) {
            const double ar = a[i + l].real(), ai = a[i + l].imag();
            const double br = b[i + l].real(), bi = b[i + l].imag();
            re[l] += ar * br - ai * bi;
            im[l] += ar * bi + ai * br;
        }
    }
    for (; i < n; ++i) {
        re[0] += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im[0] += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re[0] + re[1], im[0] + im[1]};
}

double weighted_energy(const cplx* c, const double* w, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (int l = 0; l < 4; ++l) acc[l] += w[i + l] * std::norm(c[i + l]);
    for (; i < n; ++i) acc[0] += w[i] * std::norm(c[i]);
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

} // namespace fbo::simd::scalar
