#include "doctest.h"

#include <cmath>

#include "fbo/ratio.hpp"
#include "oracles.hpp"

using namespace fbo;

namespace {

RatioConfig small(std::size_t samples, std::vector<std::size_t> res) {
    RatioConfig c;
    c.samples = samples;
    c.resolutions = std::move(res);
    return c;
}

} // namespace

TEST_CASE("estimate kind names") {
    for (auto k : {EstimateKind::strichartz, EstimateKind::bilinear_str, EstimateKind::dual_bilinear,
                   EstimateKind::main_bilinear, EstimateKind::smoothing})
        CHECK(parse_estimate_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_estimate_kind("trilinear"), std::invalid_argument);
    CHECK(default_resolutions(EstimateKind::strichartz) == std::vector<std::size_t>{256, 512});
    CHECK(default_resolutions(EstimateKind::main_bilinear) == std::vector<std::size_t>{64, 128});
}

TEST_CASE("packet fields") {
    PacketFamily fam;
    const auto f = draw_packet_field(fam, true, 3);
    CHECK(f.packets.size() >= 1);
    CHECK(f.packets.size() <= fam.max_packets);
    for (const auto& p : f.packets) {
        CHECK(std::abs(p.center) <= fam.center_max);
        CHECK(std::abs(p.amplitude) >= fam.amplitude_min);
    }
    const auto g = draw_packet_field(fam, true, 3);
    CHECK(g.packets.size() == f.packets.size());
    CHECK(g.packets[0].amplitude == f.packets[0].amplitude);

    const auto U = sample_packet_field(f, 1.5, 20.0, 1000.0, 32, 32);
    const std::size_t z = U.space_grid.zero_index();
    for (std::size_t m = 0; m < U.n_tau(); ++m) CHECK(U.at(z, m) == cplx(0.0));
    // real field: conj(U(-tau, -xi)) = U(tau, xi)
    const auto R = sample_packet_field(f, 1.5, 20.0, 1000.0, 32, 32);
    const long c = static_cast<long>(U.n_xi() / 2) - 1;
    double defect = 0.0, mass = 0.0;
    for (long k = 0; k <= 2 * c; ++k)
        for (long m = 0; m <= 2 * c; ++m) {
            defect = std::max(defect, std::abs(U.at(k, m) - std::conj(R.at(2 * c - k, 2 * c - m))));
            mass = std::max(mass, std::abs(U.at(k, m)));
        }
    CHECK(defect <= 1e-14 * mass);
    const auto U2 = sample_packet_field(f, 1.5, 20.0, 1000.0, 32, 32, 2.0);
    CHECK(U2.coeffs[100] == 2.0 * U.coeffs[100]);
    CHECK_THROWS_AS(sample_packet_field(f, 1.5, 0.0, 1000.0, 32, 32), std::invalid_argument);

    RatioConfig cfg;
    CHECK(packet_tau_range(cfg, 1.5) == doctest::Approx(2.0 * (std::pow(8.0, 2.5) + 150.0) + 360.0));
    cfg.tau_range = 77.0;
    CHECK(packet_tau_range(cfg, 1.5) == 77.0);
}

TEST_CASE("smoothing infimum sits at the end of the beta range") {
    const auto r = estimate_ratio(EstimateKind::smoothing, small(0, {}), EstimateParams{}, 1);
    CHECK(r.infimum);
    CHECK(r.ratio == doctest::Approx(oracle::kSmoothingMin).epsilon(1e-9));
    CHECK(r.ratio >= 1.0);
    CHECK(r.extremal_sample.at("beta") == doctest::Approx(-0.25));
    CHECK(r.skipped >= 1);
    REQUIRE(r.refinement_trend.size() == 2);
    CHECK(r.refinement_variation() < 1e-6);
}

TEST_CASE("ratios are invariant under rescaling the inputs") {
    EstimateParams p = EstimateParams::admissible_defaults(1.5, 0.1);
    for (auto kind : {EstimateKind::bilinear_str, EstimateKind::dual_bilinear, EstimateKind::main_bilinear}) {
        auto cfg = small(3, {16, 32});
        const auto a = estimate_ratio(kind, cfg, p, 5);
        cfg.amplitude_scale = 2.0;
        const auto b = estimate_ratio(kind, cfg, p, 5);
        CHECK(a.ratio > 0.0);
        CHECK(std::isfinite(a.ratio));
        CHECK(b.ratio == doctest::Approx(a.ratio).epsilon(1e-10));
        CHECK(a.refinement_trend.size() == 2);
        CHECK(a.sample_count == 3);
    }
    auto cfg = small(3, {64, 128});
    const auto a = estimate_ratio(EstimateKind::strichartz, cfg, p, 5);
    cfg.amplitude_scale = 2.0;
    const auto b = estimate_ratio(EstimateKind::strichartz, cfg, p, 5);
    CHECK(b.ratio == doctest::Approx(a.ratio).epsilon(1e-10));
}

TEST_CASE("main bilinear region bookkeeping") {
    const auto p = EstimateParams::admissible_defaults(1.5, 0.1);
    const auto r = estimate_ratio(EstimateKind::main_bilinear, small(6, {16, 32}), p, 2);
    double total = 0.0;
    for (double f : r.region_mass_fraction) total += f;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    std::size_t dominant = 0;
    for (auto c : r.dominant_region_counts) dominant += c;
    CHECK(dominant == 6);
    CHECK(r.nonempty_d_regions() >= 1);
    CHECK(!r.extremal_term_histogram.empty());
    for (const auto& [label, count] : r.extremal_term_histogram) {
        CHECK(label.substr(0, 1) == "D");
        CHECK(count > 0);
    }
}

TEST_CASE("ratio runs are deterministic and parameter checked") {
    const auto p = EstimateParams::admissible_defaults(1.5, 0.1);
    const auto a = estimate_ratio(EstimateKind::bilinear_str, small(4, {16, 32}), p, 9);
    const auto b = estimate_ratio(EstimateKind::bilinear_str, small(4, {16, 32}), p, 9);
    CHECK(a.ratio == b.ratio);
    CHECK(a.extremal_sample == b.extremal_sample);
    auto bad = p;
    bad.b = 0.4;
    CHECK_THROWS(estimate_ratio(EstimateKind::main_bilinear, small(2, {16, 32}), bad, 1));
}
