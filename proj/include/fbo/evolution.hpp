#pragma once

// Nonlinear flow of u_t - |D|^alpha u_x + u u_x = 0 on the periodic box.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fbo/spectral.hpp"
#include "fbo/trajectory.hpp"

namespace fbo {

// Raised when the conserved L2 norm grows by more than the sentinel factor.
class BlowUpError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// -1/2 d/dx (u^2), with the square formed in physical space and projected
// onto |k| <= n/3 (2/3 rule) before differentiating.
SpectralField nonlinearity(const SpectralField& u);
SpectralField dealiased_square(const SpectralField& u);
std::size_t dealias_cutoff(const FrequencyGrid& grid);

enum class Scheme { split_step, exponential_integrator };

Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme s);

struct SolverOptions {
    Scheme scheme = Scheme::split_step;
    bool nonlinear = true;
    AlphaPolicy alpha_policy = AlphaPolicy::strict;
    double blowup_factor = 10.0;
};

// dt * max|xi| * max|u|; solve_reference warns on stderr above 1.
double cfl_number(const SpectralField& u, double dt);

// Integrates forward and backward from t = 0 to cover [-t_span, t_span].
// split_step is Strang splitting (exact half-step linear flow around an RK4
// nonlinear step); exponential_integrator is ETDRK4 with contour-integral
// coefficients.
Trajectory solve_reference(const SpectralField& u0, double t_span, double dt, double alpha,
                           const SolverOptions& options = {});

// Phi_T(u)(t) = psi(t) W(t) u0 - 1/2 psi_T(t) int_0^t W(t - t') d_x(u^2)(t') dt',
// evaluated on the time grid of u_guess with trapezoidal quadrature.
Trajectory duhamel_apply(const Trajectory& u_guess, const SpectralField& u0, double T, double alpha);

struct PicardHistory {
    std::vector<double> iterate_differences;
    bool converged = false;
    std::size_t iterations = 0;

    // Mean ratio of successive gaps over the recorded history (skipping the
    // first `skip` ratios).
    double contraction_factor(std::size_t skip = 1) const;
};

struct PicardResult {
    Trajectory solution;
    PicardHistory history;
};

struct PicardOptions {
    double dt = 1e-3;
    double tol = 1e-10;
    std::size_t max_iter = 50;
};

// Window needed by duhamel_apply: [-2 max(T,1), 2 max(T,1)].
double duhamel_window(double T);

inline constexpr double kNoLimit = 1e300;

// sup over stored times of the L2 distance between two trajectories,
// restricted to |t| <= t_limit. Times are matched by value.
double sup_l2_gap(const Trajectory& a, const Trajectory& b, double t_limit = kNoLimit);

// Iterates u^{n+1} = Phi_T(u^n) from u^0 = 0.
PicardResult picard_solve(const SpectralField& u0, double T, double alpha, const PicardOptions& options = {});

} // namespace fbo
