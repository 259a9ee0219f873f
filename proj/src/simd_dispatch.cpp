#include "fbo/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fbo::simd {

namespace {

bool cpu_has_avx2() {
#if defined(FBO_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa detect() {
    if (const char* env = std::getenv("FBO_LAB_SIMD"); env && std::string_view(env) == "scalar")
        return Isa::scalar;
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

} // namespace

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
    if (!isa_available(isa)) throw std::runtime_error(std::string("SIMD variant unavailable: ") + isa_name(isa));
    current().store(isa, std::memory_order_relaxed);
}

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
#if defined(FBO_HAVE_AVX2_KERNELS)
    if (active_isa() == Isa::avx2) return avx2::dot(a, b, n);
#endif
    return scalar::dot(a, b, n);
}

double weighted_energy(const cplx* c, const double* w, std::size_t n) {
#if defined(FBO_HAVE_AVX2_KERNELS)
    if (active_isa() == Isa::avx2) return avx2::weighted_energy(c, w, n);
#endif
    return scalar::weighted_energy(c, w, n);
}

} // namespace fbo::simd
