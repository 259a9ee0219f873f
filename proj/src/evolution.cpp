#include "fbo/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

#include "fbo/norms.hpp"

namespace fbo {

std::size_t dealias_cutoff(const FrequencyGrid& grid) { return (grid.size() - 1) / 3; }

namespace {

SpectralField truncate_to_band(const SpectralField& u, std::size_t kc) {
    SpectralField out(u.grid);
    for (std::size_t i = 0; i < u.grid.size(); ++i)
        if (static_cast<std::size_t>(std::abs(u.grid.wavenumber(i))) <= kc) out.coeffs[i] = u.coeffs[i];
    return out;
}

} // namespace

SpectralField dealiased_square(const SpectralField& u) {
    const std::size_t kc = dealias_cutoff(u.grid);
    auto samples = inverse_transform(truncate_to_band(u, kc));
    for (auto& z : samples) z *= z;
    return truncate_to_band(forward_transform(u.grid, std::span<const cplx>(samples)), kc);
}

SpectralField nonlinearity(const SpectralField& u) {
    SpectralField sq = dealiased_square(u);
    for (std::size_t i = 0; i < sq.grid.size(); ++i) sq.coeffs[i] *= cplx(0.0, -0.5 * u.grid.xi(i));
    return sq;
}

Scheme parse_scheme(const std::string& name) {
    if (name == "split_step") return Scheme::split_step;
    if (name == "exponential_integrator") return Scheme::exponential_integrator;
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::string to_string(Scheme s) { return s == Scheme::split_step ? "split_step" : "exponential_integrator"; }

double cfl_number(const SpectralField& u, double dt) {
    double umax = 0.0;
    for (auto z : inverse_transform(u)) umax = std::max(umax, std::abs(z));
    return std::abs(dt) * u.grid.max_abs_xi() * umax;
}

namespace {

// y <- y + h * N(y), classical RK4 on the nonlinear part only.
SpectralField rk4_nonlinear(const SpectralField& u, double h) {
    SpectralField k1 = nonlinearity(u);
    SpectralField k2 = nonlinearity(u + (0.5 * h) * k1);
    SpectralField k3 = nonlinearity(u + (0.5 * h) * k2);
    SpectralField k4 = nonlinearity(u + h * k3);
    SpectralField out = u;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] += (h / 6.0) * (k1.coeffs[i] + 2.0 * k2.coeffs[i] + 2.0 * k3.coeffs[i] + k4.coeffs[i]);
    return out;
}

struct EtdCoefficients {
    std::vector<cplx> e, e_half, q, f1, f2, f3;
};

// Cox-Matthews ETDRK4, phi-functions averaged over a unit circle around h L.
EtdCoefficients etd_coefficients(const FrequencyGrid& grid, double alpha, double h) {
    constexpr int kContour = 64;
    const std::size_t n = grid.size();
    EtdCoefficients c{std::vector<cplx>(n), std::vector<cplx>(n), std::vector<cplx>(n),
                      std::vector<cplx>(n), std::vector<cplx>(n), std::vector<cplx>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const cplx hl(0.0, h * dispersion(grid.xi(i), alpha));
        c.e[i] = std::exp(hl);
        c.e_half[i] = std::exp(0.5 * hl);
        cplx q{}, f1{}, f2{}, f3{};
        for (int j = 0; j < kContour; ++j) {
            const cplx r = std::polar(1.0, std::numbers::pi * (j + 0.5) / kContour * 2.0);
            const cplx z = hl + r;
            const cplx ez = std::exp(z), ez2 = std::exp(0.5 * z);
            const cplx z3 = z * z * z;
            q += (ez2 - 1.0) / z;
            f1 += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
            f2 += (2.0 + z + ez * (z - 2.0)) / z3;
            f3 += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
        }
        c.q[i] = h * q / double(kContour);
        c.f1[i] = h * f1 / double(kContour);
        c.f2[i] = h * f2 / double(kContour);
        c.f3[i] = h * f3 / double(kContour);
    }
    return c;
}

SpectralField etdrk4_step(const SpectralField& u, const EtdCoefficients& c) {
    const std::size_t n = u.coeffs.size();
    const SpectralField nu = nonlinearity(u);
    SpectralField a(u.grid), b(u.grid), cc(u.grid);
    for (std::size_t i = 0; i < n; ++i) a.coeffs[i] = c.e_half[i] * u.coeffs[i] + c.q[i] * nu.coeffs[i];
    const SpectralField na = nonlinearity(a);
    for (std::size_t i = 0; i < n; ++i) b.coeffs[i] = c.e_half[i] * u.coeffs[i] + c.q[i] * na.coeffs[i];
    const SpectralField nb = nonlinearity(b);
    for (std::size_t i = 0; i < n; ++i)
        cc.coeffs[i] = c.e_half[i] * a.coeffs[i] + c.q[i] * (2.0 * nb.coeffs[i] - nu.coeffs[i]);
    const SpectralField nc = nonlinearity(cc);
    SpectralField out(u.grid);
    for (std::size_t i = 0; i < n; ++i)
        out.coeffs[i] = c.e[i] * u.coeffs[i] + c.f1[i] * nu.coeffs[i] +
                        2.0 * c.f2[i] * (na.coeffs[i] + nb.coeffs[i]) + c.f3[i] * nc.coeffs[i];
    return out;
}

class Stepper {
  public:
    Stepper(const FrequencyGrid& grid, double alpha, double h, Scheme scheme)
        : alpha_(alpha), h_(h), scheme_(scheme) {
        if (scheme == Scheme::exponential_integrator) etd_ = etd_coefficients(grid, alpha, h);
    }

    SpectralField step(const SpectralField& u) const {
        if (scheme_ == Scheme::exponential_integrator) return etdrk4_step(u, etd_);
        SpectralField v = propagate(u, 0.5 * h_, alpha_, AlphaPolicy::allow_any);
        v = rk4_nonlinear(v, h_);
        return propagate(v, 0.5 * h_, alpha_, AlphaPolicy::allow_any);
    }

  private:
    double alpha_;
    double h_;
    Scheme scheme_;
    EtdCoefficients etd_;
};

} // namespace

Trajectory solve_reference(const SpectralField& u0, double t_span, double dt, double alpha,
                           const SolverOptions& options) {
    check_alpha(alpha, options.alpha_policy);
    Trajectory traj;
    traj.alpha = alpha;
    traj.times = symmetric_time_axis(t_span, dt);
    const std::size_t count = traj.times.size();
    const std::size_t origin = count / 2;
    traj.states.assign(count, SpectralField(u0.grid));
    traj.states[origin] = u0;

    if (!options.nonlinear) {
        for (std::size_t i = 0; i < count; ++i) traj.states[i] = propagate(u0, traj.times[i], alpha, options.alpha_policy);
        return traj;
    }

    if (const double cfl = cfl_number(u0, dt); cfl > 1.0)
        std::cerr << "warning: CFL-style number dt*max|xi|*max|u| = " << cfl << " exceeds 1\n";

    const double n0 = l2_norm(u0);
    auto sentinel = [&](const SpectralField& u, double t) {
        const double n = l2_norm(u);
        if (!std::isfinite(n) || (n0 > 0.0 && n > options.blowup_factor * n0) || (n0 == 0.0 && n > 0.0))
            throw BlowUpError("solve_reference: L2 norm left the conserved value at t = " + std::to_string(t));
    };

    for (int dir : {+1, -1}) {
        const Stepper stepper(u0.grid, alpha, dir * dt, options.scheme);
        SpectralField u = u0;
        for (std::size_t j = 1; j <= origin; ++j) {
            u = stepper.step(u);
            const std::size_t slot = dir > 0 ? origin + j : origin - j;
            sentinel(u, traj.times[slot]);
            traj.states[slot] = u;
        }
    }
    return traj;
}

double duhamel_window(double T) { return 2.0 * std::max(T, 1.0); }

Trajectory duhamel_apply(const Trajectory& u_guess, const SpectralField& u0, double T, double alpha) {
    if (!(T > 0.0)) throw std::invalid_argument("duhamel_apply: T must be positive");
    check_alpha(alpha, AlphaPolicy::strict);
    u_guess.validate();
    if (!(u_guess.grid() == u0.grid)) throw std::invalid_argument("duhamel_apply: grid mismatch between guess and data");
    const double dt = u_guess.dt();
    const double need = duhamel_window(T);
    if (u_guess.t_min() > -need + 1e-9 * dt || u_guess.t_max() < need - 1e-9 * dt)
        throw std::invalid_argument("duhamel_apply: guess does not cover [-2max(T,1), 2max(T,1)]");

    const std::size_t count = u_guess.size();
    const std::size_t origin = u_guess.origin_index();
    Trajectory out;
    out.alpha = alpha;
    out.times = u_guess.times;
    out.states.assign(count, SpectralField(u0.grid));

    // Integrand W(-t') N(u(t')), needed only where psi_T(t) is nonzero.
    auto integrand = [&](std::size_t j) {
        return propagate(nonlinearity(u_guess.states[j]), -u_guess.times[j], alpha);
    };
    auto inside = [&](std::size_t j) { return std::abs(u_guess.times[j]) < 2.0 * T; };

    for (int dir : {+1, -1}) {
        SpectralField acc(u0.grid);
        SpectralField prev = integrand(origin);
        for (std::size_t j = origin;; j = dir > 0 ? j + 1 : j - 1) {
            const double t = u_guess.times[j];
            if (j != origin && inside(j)) {
                SpectralField cur = integrand(j);
                for (std::size_t i = 0; i < acc.coeffs.size(); ++i)
                    acc.coeffs[i] += (dir * 0.5 * dt) * (prev.coeffs[i] + cur.coeffs[i]);
                prev = std::move(cur);
            }
            SpectralField value = propagate(u0, t, alpha);
            value *= bump(t);
            const double cut = cutoff_value(t, T);
            if (cut != 0.0) {
                SpectralField forced = propagate(acc, t, alpha);
                for (std::size_t i = 0; i < value.coeffs.size(); ++i) value.coeffs[i] += cut * forced.coeffs[i];
            }
            out.states[j] = std::move(value);
            if (dir > 0 ? j + 1 == count : j == 0) break;
        }
    }
    return out;
}

double sup_l2_gap(const Trajectory& a, const Trajectory& b, double t_limit) {
    if (a.empty() || b.empty()) throw std::invalid_argument("sup_l2_gap: empty trajectory");
    const double tol = a.size() > 1 ? 1e-9 * a.dt() : 1e-12;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a.times[i];
        if (std::abs(t) > t_limit + tol) continue;
        const std::size_t j = b.index_at(t);
        if (std::abs(b.times[j] - t) > tol) throw std::invalid_argument("sup_l2_gap: time grids do not match");
        worst = std::max(worst, l2_distance(a.states[i], b.states[j]));
    }
    return worst;
}

double PicardHistory::contraction_factor(std::size_t skip) const {
    const auto& d = iterate_differences;
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 1 + skip; i < d.size(); ++i) {
        if (d[i - 1] <= 0.0) continue;
        sum += d[i] / d[i - 1];
        ++n;
    }
    return n ? sum / static_cast<double>(n) : 0.0;
}

PicardResult picard_solve(const SpectralField& u0, double T, double alpha, const PicardOptions& options) {
    if (!(options.tol > 0.0)) throw std::invalid_argument("picard_solve: tol must be positive");
    if (options.max_iter == 0) throw std::invalid_argument("picard_solve: max_iter must be positive");
    check_alpha(alpha, AlphaPolicy::strict);

    PicardResult result;
    Trajectory& u = result.solution;
    u.alpha = alpha;
    u.times = symmetric_time_axis(duhamel_window(T), options.dt);
    u.states.assign(u.times.size(), SpectralField(u0.grid));

    for (std::size_t n = 1; n <= options.max_iter; ++n) {
        Trajectory next = duhamel_apply(u, u0, T, alpha);
        const double gap = sup_l2_gap(next, u);
        if (!std::isfinite(gap)) throw BlowUpError("picard_solve: iterate gap is not finite");
        result.history.iterate_differences.push_back(gap);
        result.history.iterations = n;
        u = std::move(next);
        if (gap <= options.tol) {
            result.history.converged = true;
            break;
        }
    }
    return result;
}

} // namespace fbo
