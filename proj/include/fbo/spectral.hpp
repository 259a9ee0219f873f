#pragma once

// Periodic spectral representation of fields on a box [-L/2, L/2).
//
// Coefficients approximate the continuous transform
//   u^(xi) = (2 pi)^{-1/2} \int e^{-i x xi} u(x) dx
// at xi_k = 2 pi k / L, k = -n/2+1 ... n/2, stored in ascending order. With
// this normalization the Riemann sum sum_k |u^_k|^2 (2 pi / L) equals the
// trapezoidal physical L2 norm exactly.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fbo {

using cplx = std::complex<double>;

class FrequencyGrid {
  public:
    FrequencyGrid() = default;

    std::size_t size() const { return n_; }
    double box_length() const { return length_; }
    double spacing() const;
    double dx() const { return length_ / static_cast<double>(n_); }

    // Wavenumber index k of storage slot i, k = i - n/2 + 1.
    long wavenumber(std::size_t i) const { return static_cast<long>(i) - static_cast<long>(n_ / 2) + 1; }
    double xi(std::size_t i) const { return spacing() * static_cast<double>(wavenumber(i)); }
    std::size_t zero_index() const { return n_ / 2 - 1; }
    // The unpaired extreme mode k = n/2.
    std::size_t nyquist_index() const { return n_ - 1; }
    // Storage slot of wavenumber k, or size() if k is off the grid.
    std::size_t index_of(long k) const;

    double position(std::size_t j) const { return -0.5 * length_ + dx() * static_cast<double>(j); }
    std::vector<double> frequencies() const;
    std::vector<double> positions() const;
    double max_abs_xi() const { return xi(n_ - 1); }

    friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

  private:
    friend FrequencyGrid make_grid(std::size_t, double);
    FrequencyGrid(std::size_t n, double length) : n_(n), length_(length) {}

    std::size_t n_ = 0;
    double length_ = 0.0;
};

FrequencyGrid make_grid(std::size_t n_modes, double box_length);

struct SpectralField {
    FrequencyGrid grid;
    std::vector<cplx> coeffs;

    SpectralField() = default;
    explicit SpectralField(FrequencyGrid g) : grid(g), coeffs(g.size()) {}
    SpectralField(FrequencyGrid g, std::vector<cplx> c);

    cplx at_wavenumber(long k) const;
    cplx mean_mode() const { return coeffs[grid.zero_index()]; }
    bool is_zero() const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField u);

// Weighted l2 norm sqrt(sum |c|^2 dxi); equals the physical L2 norm.
double l2_norm(const SpectralField& u);
double l2_distance(const SpectralField& a, const SpectralField& b);

// Largest |c(xi) - conj(c(-xi))| over paired modes, relative to the l2 norm
// of the coefficients. Zero for real-valued fields.
double conjugate_symmetry_defect(const SpectralField& u);

// --- transforms -----------------------------------------------------------

SpectralField forward_transform(const FrequencyGrid& grid, std::span<const cplx> samples);
SpectralField forward_transform(const FrequencyGrid& grid, std::span<const double> samples);
std::vector<cplx> inverse_transform(const SpectralField& u);
// Real part of the inverse transform, for real-valued fields.
std::vector<double> inverse_transform_real(const SpectralField& u);

// Plain DFT along one axis with the same normalization, used by the time
// transform of space-time fields: samples at t_j = -W/2 + j W/m.
void forward_dft_inplace(std::span<cplx> data, double window);
void inverse_dft_inplace(std::span<cplx> data, double window);

// --- multipliers and propagator -------------------------------------------

enum class MultiplierKind { homogeneous, bessel };

// <xi> = (1 + xi^2)^{1/2}.
inline double japanese(double x) { return std::sqrt(1.0 + x * x); }

SpectralField apply_multiplier(const SpectralField& u, MultiplierKind kind, double s);

enum class AlphaPolicy { strict, allow_any };

// Dispersion relation phase xi |xi|^alpha.
inline double dispersion(double xi, double alpha) { return xi * std::pow(std::abs(xi), alpha); }

void check_alpha(double alpha, AlphaPolicy policy);

// Free flow W_alpha(t): multiplies every coefficient by exp(i t xi |xi|^alpha).
SpectralField propagate(const SpectralField& u0, double t, double alpha, AlphaPolicy policy = AlphaPolicy::strict);

struct FrequencySplit {
    SpectralField low;
    SpectralField high;
};

FrequencySplit split_frequencies(const SpectralField& u);

// --- cutoff ---------------------------------------------------------------

// Smooth even bump: 1 on [-1,1], 0 outside [-2,2], built from exp(-1/x) glue.
double bump(double t);
double cutoff_value(double t, double T);

struct CutoffProfile {
    static constexpr double plateau_radius = 1.0;
    static constexpr double support_radius = 2.0;
    static constexpr const char* shape = "exp(-1/x) glue";
    double scale = 1.0;

    double operator()(double t) const { return cutoff_value(t, scale); }
};

} // namespace fbo
