#pragma once

// L2 conservation and the H^(0,omega) a priori bound along a trajectory.

#include "fbo/spectral.hpp"
#include "fbo/trajectory.hpp"

namespace fbo {

// max_t | ||u(t)|| - ||u(0)|| | / max(||u(0)||, machine floor), L2 norms.
double l2_drift(const Trajectory& traj);

// F v = psi(xi) |xi|^{-omega} F u. For omega > 0 the zero mode must vanish.
SpectralField low_freq_project(const SpectralField& u, double omega);

struct AprioriReport {
    double alpha = 0.0;
    double omega = 0.0;
    double T = 0.0;
    double initial_norm = 0.0;
    double sup_norm = 0.0;
    // Smallest C with sup <= C (init + T init^2); 0 for zero data.
    double fitted_C = 0.0;
    // max_t ||f(t)||_{L2} / ||u(t)||_{L2}^2 for the low-frequency forcing
    // F f = -(i/2) psi(xi) xi |xi|^{-omega} F(u^2).
    double forcing_ratio = 0.0;
    double l2_drift = 0.0;
};

// Norms are taken on the stored samples only; T is the largest |t| stored.
AprioriReport apriori_check(const Trajectory& traj, double omega);

} // namespace fbo
