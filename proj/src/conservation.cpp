#include "fbo/conservation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fbo/evolution.hpp"
#include "fbo/norms.hpp"

namespace fbo {

double l2_drift(const Trajectory& traj) {
    if (traj.empty()) throw std::invalid_argument("l2_drift: empty trajectory");
    const double n0 = l2_norm(traj.states[traj.origin_index()]);
    const double denom = std::max(n0, std::numeric_limits<double>::min());
    double worst = 0.0;
    for (const auto& u : traj.states) worst = std::max(worst, std::abs(l2_norm(u) - n0));
    return worst / denom;
}

SpectralField low_freq_project(const SpectralField& u, double omega) {
    if (omega < 0.0) throw std::invalid_argument("low_freq_project: omega must be >= 0");
    if (omega > 0.0 && !mean_vanishes(u)) throw std::domain_error("low_freq_project: nonzero mean with omega > 0");
    SpectralField v = u;
    for (std::size_t i = 0; i < v.coeffs.size(); ++i) {
        const double xi = u.grid.xi(i);
        const double a = std::abs(xi);
        if (a >= 2.0) {
            v.coeffs[i] = {};
            continue;
        }
        double w = bump(xi);
        if (omega > 0.0) w = a == 0.0 ? 0.0 : w * std::pow(a, -omega);
        v.coeffs[i] *= w;
    }
    return v;
}

namespace {

double forcing_norm(const SpectralField& u, double omega) {
    const auto sq = dealiased_square(u);
    double acc = 0.0;
    for (std::size_t i = 0; i < sq.coeffs.size(); ++i) {
        const double xi = u.grid.xi(i);
        const double a = std::abs(xi);
        if (a >= 2.0 || a == 0.0) continue;
        const double w = 0.5 * bump(xi) * a * std::pow(a, -omega);
        acc += w * w * std::norm(sq.coeffs[i]);
    }
    return std::sqrt(acc * u.grid.spacing());
}

} // namespace

AprioriReport apriori_check(const Trajectory& traj, double omega) {
    traj.validate();
    AprioriReport r;
    r.alpha = traj.alpha;
    r.omega = omega;
    r.T = std::max(std::abs(traj.t_min()), std::abs(traj.t_max()));
    r.initial_norm = sobolev_norm(traj.states[traj.origin_index()], 0.0, omega);
    for (const auto& u : traj.states) {
        r.sup_norm = std::max(r.sup_norm, sobolev_norm(u, 0.0, omega));
        const double l2 = l2_norm(u);
        if (l2 > 0.0) r.forcing_ratio = std::max(r.forcing_ratio, forcing_norm(u, omega) / (l2 * l2));
    }
    if (r.initial_norm > 0.0) r.fitted_C = r.sup_norm / (r.initial_norm + r.T * r.initial_norm * r.initial_norm);
    r.l2_drift = l2_drift(traj);
    return r;
}

} // namespace fbo
