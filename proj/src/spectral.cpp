#include "fbo/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

namespace fbo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW planning is not thread-safe; executing a plan on fresh aligned arrays is.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        auto* buf = fftw_alloc_complex(n);
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE);
        fftw_free(buf);
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& [_, p] : plans_) fftw_destroy_plan(p);
    }

  private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)), size(n) {}
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;

    cplx* as_complex() { return reinterpret_cast<cplx*>(data); }

    fftw_complex* data;
    std::size_t size;
};

void execute(std::size_t n, int sign, FftwBuffer& buf) {
    fftw_execute_dft(PlanCache::instance().get(n, sign), buf.data, buf.data);
}

// Slot i (ascending wavenumber) <-> FFTW index k mod n.
std::size_t fft_slot(std::size_t i, std::size_t n) {
    long k = static_cast<long>(i) - static_cast<long>(n / 2) + 1;
    return static_cast<std::size_t>((k + static_cast<long>(n)) % static_cast<long>(n));
}

double parity(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// Shared by the spatial transform and the time transform: samples on
// -W/2 + j W/m, output in ascending-frequency slots.
void forward_core(std::span<const cplx> in, std::span<cplx> out, double window) {
    const std::size_t n = in.size();
    FftwBuffer buf(n);
    std::copy(in.begin(), in.end(), buf.as_complex());
    execute(n, FFTW_FORWARD, buf);
    const double scale = (window / static_cast<double>(n)) / std::sqrt(kTwoPi);
    const cplx* f = buf.as_complex();
    for (std::size_t i = 0; i < n; ++i) {
        long k = static_cast<long>(i) - static_cast<long>(n / 2) + 1;
        out[i] = f[fft_slot(i, n)] * (scale * parity(k));
    }
}

void inverse_core(std::span<const cplx> in, std::span<cplx> out, double window) {
    const std::size_t n = in.size();
    FftwBuffer buf(n);
    cplx* f = buf.as_complex();
    const double scale = std::sqrt(kTwoPi) / window;
    for (std::size_t i = 0; i < n; ++i) {
        long k = static_cast<long>(i) - static_cast<long>(n / 2) + 1;
        f[fft_slot(i, n)] = in[i] * (scale * parity(k));
    }
    execute(n, FFTW_BACKWARD, buf);
    std::copy(f, f + n, out.begin());
}

} // namespace

// --- grid -------------------------------------------------------------------

FrequencyGrid make_grid(std::size_t n_modes, double box_length) {
    if (n_modes < 8 || n_modes % 2 != 0)
        throw std::invalid_argument("make_grid: n_modes must be even and >= 8, got " + std::to_string(n_modes));
    if (!(box_length > 0.0) || !std::isfinite(box_length))
        throw std::invalid_argument("make_grid: box_length must be positive and finite");
    return FrequencyGrid(n_modes, box_length);
}

double FrequencyGrid::spacing() const { return kTwoPi / length_; }

std::size_t FrequencyGrid::index_of(long k) const {
    long i = k + static_cast<long>(n_ / 2) - 1;
    if (i < 0 || i >= static_cast<long>(n_)) return n_;
    return static_cast<std::size_t>(i);
}

std::vector<double> FrequencyGrid::frequencies() const {
    std::vector<double> f(n_);
    for (std::size_t i = 0; i < n_; ++i) f[i] = xi(i);
    return f;
}

std::vector<double> FrequencyGrid::positions() const {
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = position(j);
    return x;
}

// --- field ------------------------------------------------------------------

SpectralField::SpectralField(FrequencyGrid g, std::vector<cplx> c) : grid(g), coeffs(std::move(c)) {
    if (coeffs.size() != grid.size())
        throw std::invalid_argument("SpectralField: coefficient count does not match grid");
}

cplx SpectralField::at_wavenumber(long k) const {
    std::size_t i = grid.index_of(k);
    return i < grid.size() ? coeffs[i] : cplx{};
}

bool SpectralField::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](cplx c) { return c == cplx{}; });
}

static void require_same_grid(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("spectral fields live on different grids");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    require_same_grid(*this, o);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    require_same_grid(*this, o);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (auto& c : coeffs) c *= a;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField u) { return u *= a; }

double l2_norm(const SpectralField& u) {
    double acc = 0.0;
    for (auto c : u.coeffs) acc += std::norm(c);
    return std::sqrt(acc * u.grid.spacing());
}

double l2_distance(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) acc += std::norm(a.coeffs[i] - b.coeffs[i]);
    return std::sqrt(acc * a.grid.spacing());
}

double conjugate_symmetry_defect(const SpectralField& u) {
    const auto& g = u.grid;
    double scale = 0.0;
    for (auto c : u.coeffs) scale += std::norm(c);
    scale = std::sqrt(scale);
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    const long kmax = static_cast<long>(g.size() / 2) - 1;
    for (long k = -kmax; k <= kmax; ++k) {
        cplx a = u.coeffs[g.index_of(k)];
        cplx b = std::conj(u.coeffs[g.index_of(-k)]);
        worst = std::max(worst, std::abs(a - b));
    }
    return worst / scale;
}

// --- transforms ---------------------------------------------------------------

SpectralField forward_transform(const FrequencyGrid& grid, std::span<const cplx> samples) {
    if (samples.size() != grid.size())
        throw std::invalid_argument("forward_transform: sample count does not match grid");
    SpectralField u(grid);
    forward_core(samples, u.coeffs, grid.box_length());
    return u;
}

SpectralField forward_transform(const FrequencyGrid& grid, std::span<const double> samples) {
    std::vector<cplx> c(samples.begin(), samples.end());
    return forward_transform(grid, std::span<const cplx>(c));
}

std::vector<cplx> inverse_transform(const SpectralField& u) {
    if (u.coeffs.size() != u.grid.size())
        throw std::invalid_argument("inverse_transform: coefficient count does not match grid");
    std::vector<cplx> out(u.grid.size());
    inverse_core(u.coeffs, out, u.grid.box_length());
    return out;
}

std::vector<double> inverse_transform_real(const SpectralField& u) {
    auto c = inverse_transform(u);
    std::vector<double> r(c.size());
    std::transform(c.begin(), c.end(), r.begin(), [](cplx z) { return z.real(); });
    return r;
}

void forward_dft_inplace(std::span<cplx> data, double window) {
    std::vector<cplx> tmp(data.begin(), data.end());
    forward_core(tmp, data, window);
}

void inverse_dft_inplace(std::span<cplx> data, double window) {
    std::vector<cplx> tmp(data.begin(), data.end());
    inverse_core(tmp, data, window);
}

// --- multipliers --------------------------------------------------------------

SpectralField apply_multiplier(const SpectralField& u, MultiplierKind kind, double s) {
    SpectralField out(u.grid);
    const std::size_t zero = u.grid.zero_index();
    if (kind == MultiplierKind::homogeneous && s < 0.0 && u.coeffs[zero] != cplx{})
        throw std::domain_error("apply_multiplier: |D|^s with s < 0 requires a vanishing zero mode");
    for (std::size_t i = 0; i < u.grid.size(); ++i) {
        const double xi = u.grid.xi(i);
        double m;
        if (kind == MultiplierKind::bessel) {
            m = std::pow(1.0 + xi * xi, 0.5 * s);
        } else if (i == zero) {
            m = (s == 0.0) ? 1.0 : 0.0;
        } else {
            m = std::pow(std::abs(xi), s);
        }
        out.coeffs[i] = u.coeffs[i] * m;
    }
    return out;
}

void check_alpha(double alpha, AlphaPolicy policy) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
    if (policy == AlphaPolicy::strict && !(alpha > 1.0 && alpha < 2.0))
        throw std::invalid_argument("alpha must lie in the open interval (1, 2)");
}

SpectralField propagate(const SpectralField& u0, double t, double alpha, AlphaPolicy policy) {
    if (!std::isfinite(t)) throw std::invalid_argument("propagate: t must be finite");
    check_alpha(alpha, policy);
    SpectralField out(u0.grid);
    for (std::size_t i = 0; i < u0.grid.size(); ++i) {
        const double phase = t * dispersion(u0.grid.xi(i), alpha);
        out.coeffs[i] = u0.coeffs[i] * std::polar(1.0, phase);
    }
    return out;
}

FrequencySplit split_frequencies(const SpectralField& u) {
    FrequencySplit parts{SpectralField(u.grid), u};
    for (std::size_t i = 0; i < u.grid.size(); ++i) {
        parts.low.coeffs[i] = u.coeffs[i] * bump(u.grid.xi(i));
        parts.high.coeffs[i] = u.coeffs[i] - parts.low.coeffs[i];
    }
    return parts;
}

// --- cutoff -------------------------------------------------------------------

namespace {
double glue(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
} // namespace

double bump(double t) {
    const double a = std::abs(t);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    const double up = glue(2.0 - a);
    return up / (up + glue(a - 1.0));
}

double cutoff_value(double t, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("cutoff_value: T must be positive");
    return bump(t / T);
}

} // namespace fbo
