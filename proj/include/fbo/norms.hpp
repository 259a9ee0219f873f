#pragma once

// Weighted Sobolev, Fourier-restriction and mixed Lebesgue norms on discrete
// fields. All integrals are Riemann sums with the grid measures dxi = 2 pi/L
// and dtau = 2 pi/W.

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fbo/spectral.hpp"
#include "fbo/trajectory.hpp"

namespace fbo {

struct EstimateParams {
    double alpha = 1.5;
    double s = 0.0;
    double omega = 0.0;
    double b = 0.52;
    double b_prime = -0.5;
    double epsilon = 0.0;
    // When set, validate() enforces the constraint set under which the
    // bilinear estimate is proved (omega tied to alpha, s above threshold,
    // b' and b in their admissible ranges).
    bool enforce_admissible = false;

    // omega = 1/alpha - 1/2, s = -3/4 (alpha-1) + epsilon, b' at the largest
    // admissible value and b = 1/2 + 0.6 (b' + 1/2). At alpha = 1.5,
    // epsilon = 0.1 this gives s = -0.275, b' = -0.46667, b = 0.52.
    static EstimateParams admissible_defaults(double alpha, double epsilon);

    static double omega_for(double alpha) { return 1.0 / alpha - 0.5; }
    static double s_threshold(double alpha) { return -0.75 * (alpha - 1.0); }
    double b_prime_bound() const;

    void validate() const;
    std::string describe() const;
};

// Field on a (tau, xi) grid, xi-major: coeffs[k * n_tau + m] holds the
// transform at (tau_m, xi_k), so each spatial mode owns a contiguous tau column.
struct SpaceTimeField {
    FrequencyGrid space_grid;
    FrequencyGrid time_grid;
    std::vector<cplx> coeffs;

    SpaceTimeField() = default;
    SpaceTimeField(FrequencyGrid space, FrequencyGrid time)
        : space_grid(space), time_grid(time), coeffs(space.size() * time.size()) {}

    std::size_t n_xi() const { return space_grid.size(); }
    std::size_t n_tau() const { return time_grid.size(); }
    cplx& at(std::size_t k, std::size_t m) { return coeffs[k * n_tau() + m]; }
    cplx at(std::size_t k, std::size_t m) const { return coeffs[k * n_tau() + m]; }
    std::span<cplx> column(std::size_t k) { return {coeffs.data() + k * n_tau(), n_tau()}; }
    std::span<const cplx> column(std::size_t k) const { return {coeffs.data() + k * n_tau(), n_tau()}; }
    double cell_measure() const { return space_grid.spacing() * time_grid.spacing(); }
    bool same_grids(const SpaceTimeField& o) const {
        return space_grid == o.space_grid && time_grid == o.time_grid;
    }

    SpaceTimeField& operator*=(double a);
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// True when the xi = 0 coefficient is negligible against the field's l2 mass.
bool mean_vanishes(const SpectralField& u);
bool mean_vanishes(const SpaceTimeField& U);

// || u ||_{H^(s,omega)}: sqrt(sum <xi>^{2s+2 omega} |xi|^{-2 omega} |u^|^2 dxi).
double sobolev_norm(const SpectralField& u, double s, double omega);

// Discrete time transform of psi_T(t) u(t) per spatial mode. The window is
// the smallest even sample count covering padding * 4T.
SpaceTimeField localized_lift(const Trajectory& traj, double T, double padding = 2.0);

// Integrand weight of X_{s,omega,b} at (tau, xi); 0 at xi = 0 when omega > 0.
double bourgain_weight(double tau, double xi, double alpha, double s, double omega, double b);

// || U ||_{X_{s,omega,b}} with the dispersion exponent alpha.
double bourgain_norm(const SpaceTimeField& U, double alpha, double s, double omega, double b);
double bourgain_norm(const SpaceTimeField& U, const EstimateParams& p);
double spacetime_l2_norm(const SpaceTimeField& U);

// L^p_t L^q_x norm of a trajectory: trapezoid in time, Riemann sum (or grid
// maximum for q = inf) in space.
double mixed_lebesgue_norm(const Trajectory& traj, double p_time, double q_space);
double spatial_lebesgue_norm(const SpectralField& u, double q);

} // namespace fbo
