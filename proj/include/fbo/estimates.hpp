#pragma once

// Symbols of the bilinear analysis: resonance function, modulation weights,
// the frequency/modulation region split, and ratio reports.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fbo/norms.hpp"

namespace fbo {

// h(xi1, xi2, xi) = xi|xi|^alpha - xi1|xi1|^alpha - xi2|xi2|^alpha, xi = xi1 + xi2.
double resonance(double xi1, double xi2, double alpha);

// |h| / (|xi_min| |xi_max|^alpha) over {|xi1|, |xi2|, |xi1 + xi2|}; NaN when
// any of the three frequencies vanishes.
double resonance_ratio(double xi1, double xi2, double alpha);

struct SymbolWeights {
    double sigma = 0.0;  // |tau| + |xi|^{1+alpha}
    double lambda = 0.0; // tau - xi|xi|^alpha
};

SymbolWeights modulation_weights(double tau, double xi, double alpha);

enum class DRegion { D11, D12, D21, D22 };
enum class ARegion { A, A1, A2 };

inline constexpr std::array<DRegion, 4> kDRegions{DRegion::D11, DRegion::D12, DRegion::D21, DRegion::D22};
inline constexpr std::array<ARegion, 3> kARegions{ARegion::A, ARegion::A1, ARegion::A2};

std::string to_string(DRegion d);
std::string to_string(ARegion a);

struct RegionLabel {
    DRegion d_part;
    ARegion a_part;
    friend bool operator==(const RegionLabel&, const RegionLabel&) = default;
};

// Frequency part from (xi1, xi2) on the half |xi1| <= |xi2|.
DRegion classify_frequencies(double xi1, double xi2);
// Largest modulation; ties go to A, then A1.
ARegion classify_modulations(double lambda, double lambda1, double lambda2);
// Requires |xi1| <= |xi2|; throws std::invalid_argument otherwise.
RegionLabel classify_region(double xi1, double xi2, double lambda, double lambda1, double lambda2);

struct RefinementPoint {
    std::size_t resolution = 0;
    double ratio = 0.0;
};

struct RatioReport {
    std::string kind;
    // true: `ratio` is an infimum (lower-bound checks); false: a supremum.
    bool infimum = false;
    double ratio = 0.0;
    // Descriptor of the extremal sample (index plus the quantities that
    // identify it, e.g. xi1/xi2 or packet parameters).
    std::map<std::string, double> extremal_sample;
    std::size_t sample_count = 0;
    std::size_t skipped = 0;
    std::vector<RefinementPoint> refinement_trend;
    std::uint64_t seed = 0;
    EstimateParams params;

    // main_bilinear only: per D-region mass share of the left side and the
    // number of samples in which each region carries >= 1% of that mass.
    std::array<double, 4> region_mass_fraction{};
    std::array<std::size_t, 4> region_sample_counts{};
    std::array<std::size_t, 4> dominant_region_counts{};
    // Term-level (d_part, a_part) counts at the extremal sample.
    std::map<std::string, std::size_t> extremal_term_histogram;

    std::size_t nonempty_d_regions() const;
    // Relative spread between the first and last refinement points.
    double refinement_variation() const;
};

struct ResonanceSampler {
    std::size_t samples = 1'000'000;
    double uniform_range = 1e3;
    int dyadic_min = -10;
    int dyadic_max = 10;
};

// Infimum of resonance_ratio over a dyadic ladder crossed with uniform draws
// on [-range, range]^2. The trend lists the infimum over the first tenth of
// the draws and over all of them.
RatioReport resonance_infimum(double alpha, const ResonanceSampler& sampler, std::uint64_t seed);

} // namespace fbo
