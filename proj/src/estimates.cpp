#include "fbo/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fbo/parallel.hpp"

namespace fbo {

double resonance(double xi1, double xi2, double alpha) {
    return dispersion(xi1 + xi2, alpha) - dispersion(xi1, alpha) - dispersion(xi2, alpha);
}

double resonance_ratio(double xi1, double xi2, double alpha) {
    const double a = std::abs(xi1), b = std::abs(xi2), c = std::abs(xi1 + xi2);
    const double lo = std::min({a, b, c}), hi = std::max({a, b, c});
    if (lo == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::abs(resonance(xi1, xi2, alpha)) / (lo * std::pow(hi, alpha));
}

SymbolWeights modulation_weights(double tau, double xi, double alpha) {
    return {std::abs(tau) + std::pow(std::abs(xi), 1.0 + alpha), tau - dispersion(xi, alpha)};
}

std::string to_string(DRegion d) {
    switch (d) {
    case DRegion::D11: return "D11";
    case DRegion::D12: return "D12";
    case DRegion::D21: return "D21";
    case DRegion::D22: return "D22";
    }
    return "?";
}

std::string to_string(ARegion a) {
    switch (a) {
    case ARegion::A: return "A";
    case ARegion::A1: return "A1";
    case ARegion::A2: return "A2";
    }
    return "?";
}

DRegion classify_frequencies(double xi1, double xi2) {
    const double a1 = std::abs(xi1), a2 = std::abs(xi2);
    if (4.0 * a1 <= a2) return a1 <= 2.0 ? DRegion::D11 : DRegion::D12;
    const double xi = std::abs(xi1 + xi2);
    if (xi1 * xi2 < 0.0 && xi <= 0.5 * a1 && a2 >= 1.0) return DRegion::D22;
    return DRegion::D21;
}

ARegion classify_modulations(double lambda, double lambda1, double lambda2) {
    const double l = std::abs(lambda), l1 = std::abs(lambda1), l2 = std::abs(lambda2);
    if (l >= l1 && l >= l2) return ARegion::A;
    if (l1 >= l2) return ARegion::A1;
    return ARegion::A2;
}

RegionLabel classify_region(double xi1, double xi2, double lambda, double lambda1, double lambda2) {
    if (!(std::abs(xi1) <= std::abs(xi2)))
        throw std::invalid_argument("classify_region: requires |xi1| <= |xi2| (apply the symmetry reduction first)");
    return {classify_frequencies(xi1, xi2), classify_modulations(lambda, lambda1, lambda2)};
}

std::size_t RatioReport::nonempty_d_regions() const {
    return static_cast<std::size_t>(
        std::count_if(region_sample_counts.begin(), region_sample_counts.end(), [](std::size_t c) { return c > 0; }));
}

double RatioReport::refinement_variation() const {
    if (refinement_trend.size() < 2) return 0.0;
    const double a = refinement_trend.front().ratio, b = refinement_trend.back().ratio;
    return std::abs(b - a) / std::max(std::abs(a), std::numeric_limits<double>::min());
}

namespace {

struct ScanResult {
    double inf = std::numeric_limits<double>::infinity();
    double xi1 = 0.0, xi2 = 0.0;
    std::size_t index = 0;
    std::size_t skipped = 0;

    void offer(double r, double a, double b, std::size_t i) {
        if (std::isnan(r)) {
            ++skipped;
            return;
        }
        if (r < inf) {
            inf = r;
            xi1 = a;
            xi2 = b;
            index = i;
        }
    }
    void merge(const ScanResult& o) {
        if (o.inf < inf) {
            inf = o.inf;
            xi1 = o.xi1;
            xi2 = o.xi2;
            index = o.index;
        }
        skipped += o.skipped;
    }
};

} // namespace

RatioReport resonance_infimum(double alpha, const ResonanceSampler& sampler, std::uint64_t seed) {
    if (sampler.samples == 0) throw std::invalid_argument("resonance_infimum: empty sample set");
    if (!(sampler.uniform_range > 0.0)) throw std::invalid_argument("resonance_infimum: range must be positive");

    std::vector<std::pair<double, double>> ladder;
    for (int i = sampler.dyadic_min; i <= sampler.dyadic_max; ++i)
        for (int j = sampler.dyadic_min; j <= sampler.dyadic_max; ++j)
            for (double s1 : {1.0, -1.0})
                for (double s2 : {1.0, -1.0}) ladder.emplace_back(s1 * std::ldexp(1.0, i), s2 * std::ldexp(1.0, j));

    const std::size_t total = std::max(sampler.samples, ladder.size());
    const std::size_t early = std::max<std::size_t>(ladder.size(), total / 10);
    constexpr std::size_t kChunk = 1 << 16;
    const std::size_t uniform = total - ladder.size();
    const std::size_t chunks = (uniform + kChunk - 1) / kChunk;

    // Slot 0 is the ladder, slots 1.. the uniform chunks; each slot keeps the
    // scan over the early prefix and over everything.
    std::vector<ScanResult> early_scan(chunks + 1), full_scan(chunks + 1);
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        const auto [a, b] = ladder[i];
        const double r = resonance_ratio(a, b, alpha);
        early_scan[0].offer(r, a, b, i);
        full_scan[0].offer(r, a, b, i);
    }
    parallel_for(chunks, [&](std::size_t c) {
        std::mt19937_64 rng(derive_seed(seed, c));
        std::uniform_real_distribution<double> draw(-sampler.uniform_range, sampler.uniform_range);
        const std::size_t begin = ladder.size() + c * kChunk;
        const std::size_t end = std::min(total, begin + kChunk);
        for (std::size_t i = begin; i < end; ++i) {
            const double a = draw(rng), b = draw(rng);
            const double r = resonance_ratio(a, b, alpha);
            full_scan[c + 1].offer(r, a, b, i);
            if (i < early) early_scan[c + 1].offer(r, a, b, i);
        }
    });
    ScanResult early_all, all;
    for (std::size_t c = 0; c <= chunks; ++c) {
        early_all.merge(early_scan[c]);
        all.merge(full_scan[c]);
    }

    RatioReport report;
    report.kind = "resonance";
    report.infimum = true;
    report.ratio = all.inf;
    report.extremal_sample = {{"index", double(all.index)}, {"xi1", all.xi1}, {"xi2", all.xi2}};
    report.sample_count = total - all.skipped;
    report.skipped = all.skipped;
    report.refinement_trend = {{early, early_all.inf}, {total, all.inf}};
    report.seed = seed;
    report.params.alpha = alpha;
    report.params.omega = EstimateParams::omega_for(alpha);
    return report;
}

} // namespace fbo
