#include "fbo/norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fbo/simd.hpp"

namespace fbo {

// --- trajectory -------------------------------------------------------------

double Trajectory::dt() const {
    if (times.size() < 2) throw std::invalid_argument("trajectory: need at least two samples for a time step");
    return times[1] - times[0];
}

std::size_t Trajectory::index_at(double t) const {
    if (empty()) throw std::invalid_argument("trajectory is empty");
    if (times.size() == 1) return 0;
    const double pos = (t - times.front()) / dt();
    const long i = std::lround(pos);
    if (i < 0 || i >= static_cast<long>(times.size()))
        throw std::out_of_range("trajectory: time outside the stored window");
    return static_cast<std::size_t>(i);
}

void Trajectory::validate() const {
    if (times.size() != states.size()) throw std::invalid_argument("trajectory: times/states size mismatch");
    if (empty()) throw std::invalid_argument("trajectory is empty");
    for (const auto& s : states)
        if (!(s.grid == states.front().grid)) throw std::invalid_argument("trajectory: states on different grids");
    if (times.size() < 2) return;
    const double h = dt();
    if (!(h > 0.0)) throw std::invalid_argument("trajectory: times must increase");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (std::abs((times[i] - times[i - 1]) - h) > 1e-9 * h)
            throw std::invalid_argument("trajectory: non-uniform time steps");
}

std::vector<double> symmetric_time_axis(double t_span, double dt) {
    if (!(t_span > 0.0) || !(dt > 0.0) || !std::isfinite(t_span) || !std::isfinite(dt))
        throw std::invalid_argument("time axis: t_span and dt must be positive");
    if (dt > t_span) throw std::invalid_argument("time axis: dt exceeds t_span");
    const double ratio = t_span / dt;
    const long K = std::lround(ratio);
    if (std::abs(ratio - static_cast<double>(K)) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument("time axis: t_span must be an integer multiple of dt");
    std::vector<double> t(static_cast<std::size_t>(2 * K + 1));
    for (long j = -K; j <= K; ++j) t[static_cast<std::size_t>(j + K)] = static_cast<double>(j) * dt;
    return t;
}

// --- parameters ---------------------------------------------------------------

EstimateParams EstimateParams::admissible_defaults(double alpha, double epsilon) {
    EstimateParams p;
    p.alpha = alpha;
    p.epsilon = epsilon;
    p.omega = omega_for(alpha);
    p.s = s_threshold(alpha) + epsilon;
    p.b_prime = p.b_prime_bound();
    p.b = 0.5 + 0.6 * (p.b_prime + 0.5);
    p.enforce_admissible = true;
    return p;
}

double EstimateParams::b_prime_bound() const {
    return std::min({-0.25, -omega, -0.5 + epsilon / 3.0, -0.5 + 0.75 * (alpha - 1.0) - epsilon});
}

void EstimateParams::validate() const {
    for (double v : {alpha, s, omega, b, b_prime, epsilon})
        if (!std::isfinite(v)) throw std::invalid_argument("estimate params: non-finite value");
    if (!(omega >= 0.0 && omega < 0.5)) throw std::invalid_argument("estimate params: omega must lie in [0, 1/2)");
    if (epsilon < 0.0) throw std::invalid_argument("estimate params: epsilon must be >= 0");
    if (!enforce_admissible) return;
    constexpr double tol = 1e-12;
    if (!(alpha > 1.0 && alpha < 2.0)) throw std::invalid_argument("estimate params: alpha must lie in (1, 2)");
    if (std::abs(omega - omega_for(alpha)) > tol)
        throw std::invalid_argument("estimate params: admissible omega must equal 1/alpha - 1/2");
    if (epsilon > 0.25 * (alpha - 1.0) + tol)
        throw std::invalid_argument("estimate params: epsilon must not exceed (alpha-1)/4");
    if (s < s_threshold(alpha) + epsilon - tol)
        throw std::invalid_argument("estimate params: s below -3/4(alpha-1) + epsilon");
    if (b_prime > b_prime_bound() + tol || !(b_prime > -0.5))
        throw std::invalid_argument("estimate params: b' outside (-1/2, min{-1/4, -omega, -1/2+eps/3, -1/2+3/4(alpha-1)-eps}]");
    if (!(b > 0.5 && b < b_prime + 1.0)) throw std::invalid_argument("estimate params: b must lie in (1/2, b'+1)");
}

std::string EstimateParams::describe() const {
    std::ostringstream os;
    os << "alpha=" << alpha << " s=" << s << " omega=" << omega << " b=" << b << " b'=" << b_prime
       << " eps=" << epsilon;
    return os.str();
}

SpaceTimeField& SpaceTimeField::operator*=(double a) {
    for (auto& c : coeffs) c *= a;
    return *this;
}

// --- norms --------------------------------------------------------------------

namespace {
constexpr double kMeanTolerance = 1e-13;
} // namespace

bool mean_vanishes(const SpectralField& u) {
    double mass = 0.0;
    for (auto c : u.coeffs) mass += std::norm(c);
    return std::abs(u.mean_mode()) <= kMeanTolerance * std::sqrt(mass);
}

bool mean_vanishes(const SpaceTimeField& U) {
    double mass = 0.0, zero = 0.0;
    for (auto c : U.coeffs) mass += std::norm(c);
    for (auto c : U.column(U.space_grid.zero_index())) zero += std::norm(c);
    return std::sqrt(zero) <= kMeanTolerance * std::sqrt(mass);
}

namespace {

void check_omega(double omega) {
    if (!(omega >= 0.0 && omega < 0.5)) throw std::invalid_argument("omega must lie in [0, 1/2)");
}

// |xi|^{-2 omega} <xi>^{bracket_power}; zero at xi = 0 when omega > 0.
double spatial_weight(double xi, double omega, double bracket_power) {
    if (xi == 0.0) return omega > 0.0 ? 0.0 : 1.0;
    return std::pow(std::abs(xi), -2.0 * omega) * std::pow(1.0 + xi * xi, 0.5 * bracket_power);
}

} // namespace

double sobolev_norm(const SpectralField& u, double s, double omega) {
    check_omega(omega);
    if (omega > 0.0 && !mean_vanishes(u))
        throw std::domain_error("sobolev_norm: omega > 0 requires a vanishing zero mode");
    std::vector<double> w(u.grid.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = spatial_weight(u.grid.xi(i), omega, 2.0 * s + 2.0 * omega);
    return std::sqrt(simd::weighted_energy(u.coeffs, w) * u.grid.spacing());
}

SpaceTimeField localized_lift(const Trajectory& traj, double T, double padding) {
    traj.validate();
    if (!(T > 0.0)) throw std::invalid_argument("localized_lift: T must be positive");
    if (!(padding >= 2.0)) throw std::invalid_argument("localized_lift: padding factor must be >= 2");
    const double dt = traj.dt();
    const double slack = 1e-9 * dt;
    if (traj.t_min() > -2.0 * T + slack || traj.t_max() < 2.0 * T - slack)
        throw std::invalid_argument("localized_lift: trajectory does not cover [-2T, 2T]");

    std::size_t m = static_cast<std::size_t>(std::ceil(padding * 4.0 * T / dt - 1e-9));
    m = std::max<std::size_t>(8, m + (m % 2));
    const double window = static_cast<double>(m) * dt;
    SpaceTimeField U(traj.grid(), make_grid(m, window));

    // Window slot j holds t_j = -W/2 + j dt.
    const long half = static_cast<long>(m / 2);
    const long origin = static_cast<long>(traj.origin_index());
    std::vector<double> cut(m, 0.0);
    std::vector<long> src(m, -1);
    for (std::size_t j = 0; j < m; ++j) {
        const long i = origin + static_cast<long>(j) - half;
        if (i < 0 || i >= static_cast<long>(traj.size())) continue;
        const double c = cutoff_value(traj.times[static_cast<std::size_t>(i)], T);
        if (c == 0.0) continue;
        cut[j] = c;
        src[j] = i;
    }
    std::vector<cplx> column(m);
    for (std::size_t k = 0; k < U.n_xi(); ++k) {
        for (std::size_t j = 0; j < m; ++j)
            column[j] = src[j] < 0 ? cplx{} : cut[j] * traj.states[static_cast<std::size_t>(src[j])].coeffs[k];
        forward_dft_inplace(column, window);
        std::copy(column.begin(), column.end(), U.column(k).begin());
    }
    return U;
}

double bourgain_weight(double tau, double xi, double alpha, double s, double omega, double b) {
    const double spatial = spatial_weight(xi, omega, 2.0 * s - 2.0 * alpha * omega);
    if (spatial == 0.0) return 0.0;
    double wt = spatial;
    if (omega != 0.0) wt *= std::pow(1.0 + std::pow(std::abs(tau) + std::pow(std::abs(xi), 1.0 + alpha), 2), omega);
    if (b != 0.0) wt *= std::pow(1.0 + (tau - dispersion(xi, alpha)) * (tau - dispersion(xi, alpha)), b);
    return wt;
}

double bourgain_norm(const SpaceTimeField& U, double alpha, double s, double omega, double b) {
    check_omega(omega);
    if (omega > 0.0 && !mean_vanishes(U))
        throw std::domain_error("bourgain_norm: omega > 0 requires a vanishing zero spatial mode");
    const auto& sg = U.space_grid;
    const auto& tg = U.time_grid;
    std::vector<double> w(U.n_tau());
    double total = 0.0;
    for (std::size_t k = 0; k < U.n_xi(); ++k) {
        const double xi = sg.xi(k);
        const double spatial = spatial_weight(xi, omega, 2.0 * s - 2.0 * alpha * omega);
        if (spatial == 0.0) continue;
        const double elliptic = std::pow(std::abs(xi), 1.0 + alpha);
        const double phase = dispersion(xi, alpha);
        for (std::size_t m = 0; m < U.n_tau(); ++m) {
            const double tau = tg.xi(m);
            double wt = 1.0;
            if (omega != 0.0) wt *= std::pow(1.0 + std::pow(std::abs(tau) + elliptic, 2), omega);
            if (b != 0.0) wt *= std::pow(1.0 + (tau - phase) * (tau - phase), b);
            w[m] = wt;
        }
        total += spatial * simd::weighted_energy(U.column(k), w);
    }
    return std::sqrt(total * U.cell_measure());
}

double bourgain_norm(const SpaceTimeField& U, const EstimateParams& p) {
    return bourgain_norm(U, p.alpha, p.s, p.omega, p.b);
}

double spacetime_l2_norm(const SpaceTimeField& U) {
    double acc = 0.0;
    for (auto c : U.coeffs) acc += std::norm(c);
    return std::sqrt(acc * U.cell_measure());
}

double spatial_lebesgue_norm(const SpectralField& u, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("spatial Lebesgue exponent must be >= 1");
    const auto samples = inverse_transform(u);
    if (std::isinf(q)) {
        double mx = 0.0;
        for (auto z : samples) mx = std::max(mx, std::abs(z));
        return mx;
    }
    double acc = 0.0;
    for (auto z : samples) acc += std::pow(std::abs(z), q);
    return std::pow(acc * u.grid.dx(), 1.0 / q);
}

double mixed_lebesgue_norm(const Trajectory& traj, double p_time, double q_space) {
    if (!(p_time >= 1.0) || !(q_space >= 1.0)) throw std::invalid_argument("Lebesgue exponents must be >= 1");
    traj.validate();
    std::vector<double> slice(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) slice[i] = spatial_lebesgue_norm(traj.states[i], q_space);
    if (std::isinf(p_time)) return *std::max_element(slice.begin(), slice.end());
    if (traj.size() == 1) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < slice.size(); ++i) {
        const double v = std::pow(slice[i], p_time);
        acc += (i == 0 || i + 1 == slice.size()) ? 0.5 * v : v;
    }
    return std::pow(acc * traj.dt(), 1.0 / p_time);
}

} // namespace fbo
