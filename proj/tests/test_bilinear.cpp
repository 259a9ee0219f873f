#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "fbo/bilinear.hpp"
#include "oracles.hpp"

using namespace fbo;

namespace {

// Unit spacing in xi and tau: wavenumber k sits at xi = k.
SpaceTimeField empty_field(std::size_t nx = 16, std::size_t nt = 16) {
    return SpaceTimeField(make_grid(nx, 2.0 * std::numbers::pi * nx / 16.0),
                          make_grid(nt, 2.0 * std::numbers::pi * nt / 16.0));
}

SpaceTimeField delta(long k, long m, cplx v = 1.0) {
    auto u = empty_field();
    u.at(u.space_grid.index_of(k), u.time_grid.index_of(m)) = v;
    return u;
}

cplx value_at(const SpaceTimeField& u, long k, long m) {
    return u.at(u.space_grid.index_of(k), u.time_grid.index_of(m));
}

SpaceTimeField random_field(std::size_t n, std::uint64_t seed) {
    SpaceTimeField u(make_grid(n, 12.0), make_grid(n, 3.0));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (auto& c : u.coeffs) c = {g(rng), g(rng)};
    return u;
}

double norm(const SpaceTimeField& u) { return spacetime_l2_norm(u); }

} // namespace

TEST_CASE("delta inputs pick out the kernels") {
    const auto u1 = delta(1, 2), u2 = delta(2, -1);
    const double measure = u1.cell_measure();

    const auto I = bilinear_I(u1, u2, 0.75);
    CHECK(value_at(I, 3, 1).real() == doctest::Approx(oracle::kKernelI * measure).epsilon(1e-14));
    double rest = 0.0;
    for (const auto& c : I.coeffs) rest += std::norm(c);
    CHECK(std::sqrt(rest) == doctest::Approx(oracle::kKernelI * measure).epsilon(1e-14));

    // K conjugates and reflects its first argument: a delta at (-1, -2)
    // acts like conj(v) at (1, 2).
    const auto K = bilinear_K(delta(-1, -2, {0.0, 1.0}), u2, 1.5);
    CHECK(value_at(K, 3, 1).imag() == doctest::Approx(-oracle::kKernelK * measure).epsilon(1e-14));

    // |xi| = |xi1| kills the K kernel
    const auto K0 = bilinear_K(delta(-1, 0), delta(0, 0), 1.5);
    CHECK(std::abs(value_at(K0, 1, 0)) == 0.0);
    // equal moduli kill the I kernel
    const auto I0 = bilinear_I(delta(-2, 0), delta(2, 0), 0.75);
    CHECK(std::abs(value_at(I0, 0, 0)) == 0.0);
}

TEST_CASE("off-grid sums are dropped") {
    const auto I = bilinear_I(delta(6, 0), delta(5, 0), 0.75);
    for (const auto& c : I.coeffs) CHECK(c == cplx(0.0));
}

TEST_CASE("derivative of a product") {
    const auto d = derivative_of_product(delta(1, 0, 2.0), delta(2, 3));
    const double measure = d.cell_measure();
    CHECK(value_at(d, 3, 3).imag() == doctest::Approx(2.0 * 3.0 * measure / (2.0 * std::numbers::pi)));
    CHECK(value_at(d, 3, 3).real() == doctest::Approx(0.0));

    // observer columns add up to the output
    const auto a = random_field(16, 1), b = random_field(16, 2);
    SpaceTimeField summed(a.space_grid, a.time_grid);
    const auto out = derivative_of_product(a, b, [&](std::size_t q, std::size_t, std::size_t, std::span<const cplx> col) {
        auto dst = summed.column(q);
        for (std::size_t m = 0; m < col.size(); ++m) dst[m] += col[m];
    });
    double diff = 0.0;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) diff = std::max(diff, std::abs(out.coeffs[i] - summed.coeffs[i]));
    CHECK(diff < 1e-12 * norm(out));
}

TEST_CASE("I is symmetric in its arguments") {
    const auto a = random_field(16, 3), b = random_field(16, 4);
    const auto ab = bilinear_I(a, b, 0.75), ba = bilinear_I(b, a, 0.75);
    double diff = 0.0;
    for (std::size_t i = 0; i < ab.coeffs.size(); ++i) diff = std::max(diff, std::abs(ab.coeffs[i] - ba.coeffs[i]));
    CHECK(diff < 1e-12 * norm(ab));
}

TEST_CASE("I and K are adjoint") {
    for (double alpha : {1.1, 1.5, 1.9}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto u1 = random_field(32, 10 * seed), u2 = random_field(32, 10 * seed + 1),
                       w = random_field(32, 10 * seed + 2);
            const cplx lhs = spacetime_inner(bilinear_I(u1, u2, alpha / 2.0), w);
            const cplx rhs = spacetime_inner(u2, bilinear_K(u1, w, alpha));
            CHECK(std::abs(lhs - rhs) <= 1e-10 * norm(u1) * norm(u2) * norm(w));
        }
    }
}

TEST_CASE("kernel positivity") {
    auto a = empty_field(), b = empty_field();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& c : a.coeffs) c = u(rng);
    for (auto& c : b.coeffs) c = u(rng);
    for (const auto& f : {bilinear_I(a, b, 0.6), bilinear_K(a, b, 1.5)})
        for (const auto& c : f.coeffs) {
            CHECK(c.real() >= 0.0);
            CHECK(c.imag() == 0.0);
        }
}

TEST_CASE("conjugate reflection is an involution on participating modes") {
    const auto u = random_field(16, 7);
    const auto back = conjugate_reflect(conjugate_reflect(u));
    for (std::size_t k = 0; k + 1 < u.n_xi(); ++k)
        for (std::size_t m = 0; m + 1 < u.n_tau(); ++m) CHECK(back.at(k, m) == u.at(k, m));
    CHECK(back.at(u.n_xi() - 1, 0) == cplx(0.0));
}

TEST_CASE("grid mismatch") {
    const auto a = random_field(16, 1), b = random_field(32, 1);
    CHECK_THROWS_AS(bilinear_I(a, b, 0.75), std::invalid_argument);
    CHECK_THROWS_AS(bilinear_K(a, b, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(spacetime_inner(a, b), std::invalid_argument);
}
