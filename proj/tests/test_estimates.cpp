#include "doctest.h"

#include <cmath>
#include <random>

#include "fbo/estimates.hpp"
#include "oracles.hpp"

using namespace fbo;

TEST_CASE("resonance function") {
    CHECK(resonance(0.0, 3.0, 1.5) == 0.0);
    CHECK(resonance(1.0, 1.0, 2.0) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(resonance(1.0, 1.0, 1.5) == doctest::Approx(oracle::kResonance11).epsilon(1e-15));
    // odd under (xi1, xi2) -> (-xi1, -xi2), symmetric in its arguments
    CHECK(resonance(-0.3, 2.2, 1.7) == doctest::Approx(-resonance(0.3, -2.2, 1.7)).epsilon(1e-15));
    CHECK(resonance(-0.3, 2.2, 1.7) == doctest::Approx(resonance(2.2, -0.3, 1.7)).epsilon(1e-15));
}

TEST_CASE("resonance ratio on the diagonal") {
    const double expect[] = {oracle::kDiagonalRatio_1_1, oracle::kDiagonalRatio_1_3, oracle::kDiagonalRatio_1_5,
                             oracle::kDiagonalRatio_1_7, oracle::kDiagonalRatio_1_9};
    const double alphas[] = {1.1, 1.3, 1.5, 1.7, 1.9};
    for (int i = 0; i < 5; ++i)
        for (double x : {0.01, 1.0, 37.5})
            CHECK(std::abs(resonance_ratio(x, x, alphas[i]) - expect[i]) < 1e-10);
    CHECK(std::isnan(resonance_ratio(0.0, 1.0, 1.5)));
    CHECK(std::isnan(resonance_ratio(2.0, -2.0, 1.5)));
}

TEST_CASE("modulation weights") {
    const auto w = modulation_weights(2.0, -1.0, 1.5);
    CHECK(w.sigma == doctest::Approx(3.0));
    CHECK(w.lambda == doctest::Approx(3.0));
    const auto v = modulation_weights(-1.0, 2.0, 1.5);
    CHECK(v.sigma == doctest::Approx(1.0 + std::pow(2.0, 2.5)));
    CHECK(v.lambda == doctest::Approx(-1.0 - std::pow(2.0, 2.5)));
}

TEST_CASE("convolution identity for modulations") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (double alpha : {1.1, 1.5, 1.9}) {
        for (int i = 0; i < 1000; ++i) {
            const double t1 = u(rng), t2 = u(rng), x1 = u(rng) / 5.0, x2 = u(rng) / 5.0;
            const double l = modulation_weights(t1 + t2, x1 + x2, alpha).lambda;
            const double l1 = modulation_weights(t1, x1, alpha).lambda;
            const double l2 = modulation_weights(t2, x2, alpha).lambda;
            const double h = resonance(x1, x2, alpha);
            const double scale = 1.0 + std::abs(l) + std::abs(l1) + std::abs(l2);
            CHECK(std::abs((l - l1 - l2) + h) <= 1e-12 * scale);
            CHECK(std::abs(std::abs(l - l1 - l2) - std::abs(h)) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("region labels") {
    CHECK(classify_region(1.0, 8.0, 0, 0, 0).d_part == DRegion::D11);
    CHECK(classify_region(3.0, 13.0, 0, 0, 0).d_part == DRegion::D12);
    CHECK(classify_region(-2.0, 2.5, 0, 0, 0).d_part == DRegion::D22);
    CHECK(classify_region(2.0, 3.0, 0, 0, 0).d_part == DRegion::D21);
    // |xi| small but |xi2| < 1 stays out of D22
    CHECK(classify_region(-0.5, 0.6, 0, 0, 0).d_part == DRegion::D21);

    CHECK(classify_region(1.0, 8.0, 5.0, 1.0, 2.0).a_part == ARegion::A);
    CHECK(classify_region(1.0, 8.0, 1.0, -5.0, 2.0).a_part == ARegion::A1);
    CHECK(classify_region(1.0, 8.0, 1.0, 2.0, -5.0).a_part == ARegion::A2);
    // ties
    CHECK(classify_modulations(3.0, -3.0, 3.0) == ARegion::A);
    CHECK(classify_modulations(1.0, 3.0, -3.0) == ARegion::A1);

    CHECK_THROWS_AS(classify_region(3.0, 1.0, 0, 0, 0), std::invalid_argument);
    CHECK(to_string(DRegion::D22) == "D22");
    CHECK(to_string(ARegion::A1) == "A1");
}

TEST_CASE("partition on random tuples") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int i = 0; i < 20000; ++i) {
        double x1 = u(rng), x2 = u(rng);
        if (std::abs(x1) > std::abs(x2)) std::swap(x1, x2);
        const auto label = classify_region(x1, x2, u(rng), u(rng), u(rng));
        if (label.d_part == DRegion::D22) {
            CHECK(x1 * x2 < 0.0);
            CHECK(std::abs(x1 + x2) <= 0.5 * std::abs(x1));
            CHECK(std::abs(x2) >= 1.0);
        }
        if (label.d_part == DRegion::D11 || label.d_part == DRegion::D12) CHECK(4.0 * std::abs(x1) <= std::abs(x2));
    }
}

TEST_CASE("resonance infimum") {
    ResonanceSampler s;
    s.samples = 50000;
    const auto a = resonance_infimum(1.5, s, 1);
    const auto b = resonance_infimum(1.5, s, 2);
    CHECK(a.infimum);
    CHECK(a.ratio > 0.0);
    CHECK(a.ratio == doctest::Approx(b.ratio).epsilon(0.01));
    CHECK(a.ratio <= oracle::kDiagonalRatio_1_5 + 1e-12);
    REQUIRE(a.refinement_trend.size() == 2);
    CHECK(a.refinement_trend[1].ratio <= a.refinement_trend[0].ratio);
    CHECK(a.sample_count + a.skipped == 50000);
    CHECK(a.skipped > 0);

    const auto again = resonance_infimum(1.5, s, 1);
    CHECK(again.ratio == a.ratio);
    CHECK(again.extremal_sample == a.extremal_sample);

    s.samples = 0;
    CHECK_THROWS_AS(resonance_infimum(1.5, s, 1), std::invalid_argument);
}

TEST_CASE("report helpers") {
    RatioReport r;
    CHECK(r.refinement_variation() == 0.0);
    r.refinement_trend = {{64, 2.0}, {128, 2.2}};
    CHECK(r.refinement_variation() == doctest::Approx(0.1));
    r.region_sample_counts = {3, 0, 7, 1};
    CHECK(r.nonempty_d_regions() == 3);
}
