#pragma once

// Weighted (tau, xi) convolutions by direct summation.
//
// Output lives on the grid of the inputs; sums landing off the grid are
// dropped (no wrap-around). The unpaired extreme index of each axis is left
// out of every sum, so tau -> -tau, xi -> -xi reflection is a bijection on
// the participating modes and the I/K adjoint identity holds exactly.

#include <functional>
#include <span>

#include "fbo/norms.hpp"

namespace fbo {

// Per-column contribution hook: (k_out, k1, k2, contribution over tau).
using ColumnObserver = std::function<void(std::size_t, std::size_t, std::size_t, std::span<const cplx>)>;

// Kernel in the frequencies (xi, xi1, xi2) with xi = xi1 + xi2.
using FrequencyKernel = std::function<double(double, double, double)>;

// out(tau, xi) = sum kernel * A(tau1, xi1) B(tau - tau1, xi - xi1) dtau1 dxi1.
SpaceTimeField weighted_convolution(const SpaceTimeField& a, const SpaceTimeField& b, const FrequencyKernel& kernel,
                                    const ColumnObserver& observer = {});

// F I^s(u1,u2) with kernel ||xi1|^{2s} - |xi2|^{2s}|^{1/2}.
SpaceTimeField bilinear_I(const SpaceTimeField& u1, const SpaceTimeField& u2, double s);

// F K^{alpha/2}(u1,u2) with kernel ||xi|^alpha - |xi1|^alpha|^{1/2} acting on
// F conj(u1) and F u2.
SpaceTimeField bilinear_K(const SpaceTimeField& u1, const SpaceTimeField& u2, double alpha);

// F conj(u)(tau, xi) = conj(F u(-tau, -xi)).
SpaceTimeField conjugate_reflect(const SpaceTimeField& u);

// F d_x(u1 u2) = i xi (2 pi)^{-1} (F u1 * F u2).
SpaceTimeField derivative_of_product(const SpaceTimeField& u1, const SpaceTimeField& u2,
                                     const ColumnObserver& observer = {});

// L2_{tau xi} pairing sum a conj(b) dtau dxi.
cplx spacetime_inner(const SpaceTimeField& a, const SpaceTimeField& b);

} // namespace fbo
