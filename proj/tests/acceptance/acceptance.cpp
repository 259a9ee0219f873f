// One line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fbo/bilinear.hpp"
#include "fbo/conservation.hpp"
#include "fbo/estimates.hpp"
#include "fbo/evolution.hpp"
#include "fbo/norms.hpp"
#include "fbo/parallel.hpp"
#include "fbo/ratio.hpp"
#include "fbo/simd.hpp"
#include "fbo/test_fields.hpp"
#include "oracles.hpp"

using namespace fbo;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// 1. unitarity and group law of W(t)
Outcome propagator() {
    const auto g = make_grid(256, 64.0);
    double worst_norm = 0.0, worst_group = 0.0;
    for (double alpha : {1.1, 1.5, 1.9}) {
        const double omega = EstimateParams::omega_for(alpha);
        std::vector<double> norm_err(100), group_err(100);
        parallel_for(100, [&](std::size_t i) {
            FieldSpec spec;
            spec.family = FieldFamily::random_bandlimited;
            spec.band = 8.0;
            spec.complex_valued = (i % 2) == 1;
            spec.zero_mean = true;
            const auto u = make_test_field(g, spec, 1000 + i);
            const double n0 = sobolev_norm(u, 0.5, omega);
            double ne = 0.0, ge = 0.0;
            for (double t1 : {0.1, 1.0}) {
                const auto w1 = propagate(u, t1, alpha);
                ne = std::max(ne, std::abs(sobolev_norm(w1, 0.5, omega) - n0) / n0);
                for (double t2 : {0.1, 1.0}) {
                    const auto lhs = propagate(u, t1 + t2, alpha);
                    const auto rhs = propagate(w1, t2, alpha);
                    ge = std::max(ge, l2_distance(lhs, rhs) / l2_norm(u));
                }
            }
            norm_err[i] = ne;
            group_err[i] = ge;
        });
        for (std::size_t i = 0; i < 100; ++i) {
            worst_norm = std::max(worst_norm, norm_err[i]);
            worst_group = std::max(worst_group, group_err[i]);
        }
    }
    return {worst_norm <= 1e-12 && worst_group <= 1e-12,
            "norm_err=" + fmt("%.2e", worst_norm) + " group_err=" + fmt("%.2e", worst_group)};
}

// 2. L2 drift of the reference solver
Outcome l2_conservation() {
    const auto g = make_grid(512, 64.0);
    FieldSpec spec;
    spec.amplitude = 0.5;
    const auto traj = solve_reference(make_test_field(g, spec, 1), 1.0, 1e-3, 1.5);
    const double d = l2_drift(traj);
    return {d <= 1e-6, "drift=" + fmt("%.2e", d)};
}

// 3. resonance lower bound
Outcome resonance_bound() {
    const double alphas[] = {1.1, 1.3, 1.5, 1.7, 1.9};
    const double diagonal[] = {oracle::kDiagonalRatio_1_1, oracle::kDiagonalRatio_1_3, oracle::kDiagonalRatio_1_5,
                               oracle::kDiagonalRatio_1_7, oracle::kDiagonalRatio_1_9};
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 5; ++i) {
        ResonanceSampler s;
        s.samples = 1'000'000;
        const auto a = resonance_infimum(alphas[i], s, 1);
        const auto b = resonance_infimum(alphas[i], s, 2);
        const double change = std::abs(a.ratio - b.ratio) / a.ratio;
        // infimum over the full set against the first tenth
        const bool stable = a.refinement_trend.back().ratio >= 0.99 * a.refinement_trend.front().ratio;
        double diag_err = 0.0;
        for (double x : {1e-3, 0.5, 1.0, 7.0, 900.0})
            diag_err = std::max(diag_err, std::abs(resonance_ratio(x, x, alphas[i]) - diagonal[i]));
        ok = ok && a.ratio > 0.0 && b.ratio > 0.0 && change < 0.01 && stable && diag_err <= 1e-10 &&
             a.sample_count >= 1'000'000 - a.skipped;
        detail += fmt(" inf(%.1f)=", alphas[i]) + fmt("%.6f", a.ratio);
        if (change >= 0.01) detail += fmt("[seed change %.3f]", change);
        if (diag_err > 1e-10) detail += fmt("[diag err %.1e]", diag_err);
    }
    return {ok, detail.substr(1)};
}

SpaceTimeField random_spacetime(std::uint64_t seed) {
    SpaceTimeField u(make_grid(64, 24.0), make_grid(64, 6.0));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (auto& c : u.coeffs) c = {g(rng), g(rng)};
    return u;
}

// 4. <I(u1,u2), w> = <u2, K(u1,w)>
Outcome adjointness() {
    const double alphas[] = {1.1, 1.5, 1.9};
    std::vector<double> rel(50);
    parallel_for(50, [&](std::size_t i) {
        const double alpha = alphas[i % 3];
        const auto u1 = random_spacetime(derive_seed(7, 3 * i));
        const auto u2 = random_spacetime(derive_seed(7, 3 * i + 1));
        const auto w = random_spacetime(derive_seed(7, 3 * i + 2));
        const cplx lhs = spacetime_inner(bilinear_I(u1, u2, alpha / 2.0), w);
        const cplx rhs = spacetime_inner(u2, bilinear_K(u1, w, alpha));
        rel[i] = std::abs(lhs - rhs) / (spacetime_l2_norm(u1) * spacetime_l2_norm(u2) * spacetime_l2_norm(w));
    });
    double worst = 0.0;
    for (double r : rel) worst = std::max(worst, r);
    return {worst <= 1e-10, "worst=" + fmt("%.2e", worst)};
}

std::string trend_text(const RatioReport& r) {
    std::string t;
    for (const auto& p : r.refinement_trend) t += " N" + std::to_string(p.resolution) + "=" + fmt("%.5g", p.ratio);
    return t;
}

// 5. Strichartz sup ratio
Outcome strichartz() {
    RatioConfig c;
    c.samples = 200;
    c.resolutions = {256, 512};
    EstimateParams p;
    p.alpha = 1.5;
    p.b = 0.52;
    const auto r = estimate_ratio(EstimateKind::strichartz, c, p, 1);
    const double v = r.refinement_variation();
    return {std::isfinite(r.ratio) && r.ratio > 0.0 && v < 0.10,
            "sup=" + fmt("%.5g", r.ratio) + " variation=" + fmt("%.4f", v) + trend_text(r)};
}

// 6. main bilinear sup ratio and region coverage
Outcome main_bilinear() {
    RatioConfig c;
    c.samples = 200;
    c.resolutions = {64, 128};
    EstimateParams p;
    p.alpha = 1.5;
    p.s = -0.275;
    p.omega = 1.0 / 6.0;
    p.b_prime = -0.4667;
    p.b = 0.52;
    p.epsilon = 0.1;
    const auto r = estimate_ratio(EstimateKind::main_bilinear, c, p, 1);
    const double v = r.refinement_variation();
    std::string regions;
    for (std::size_t i = 0; i < 4; ++i)
        regions += " " + to_string(kDRegions[i]) + "=" + std::to_string(r.region_sample_counts[i]);
    return {std::isfinite(r.ratio) && r.ratio > 0.0 && v < 0.15 && r.nonempty_d_regions() >= 3,
            "sup=" + fmt("%.5g", r.ratio) + " variation=" + fmt("%.4f", v) + trend_text(r) + regions};
}

// 7. Picard iteration
Outcome picard() {
    const auto g = make_grid(512, 64.0);
    FieldSpec spec;
    auto u0 = make_test_field(g, spec, 1);
    u0 *= 0.1 / l2_norm(u0);
    const double T = 0.5, dt = 1e-3;
    const auto r = picard_solve(u0, T, 1.5, {dt, 1e-10, 50});
    const auto& d = r.history.iterate_differences;
    bool geometric = d.size() >= 3;
    // gaps from the third iterate on
    for (std::size_t i = 2; i < d.size(); ++i) geometric = geometric && d[i] <= 0.7 * d[i - 1];
    const double gap = sup_l2_gap(r.solution, solve_reference(u0, T, dt, 1.5), T);
    return {r.history.converged && geometric && gap <= 1e-4,
            "iterations=" + std::to_string(r.history.iterations) +
                " contraction=" + fmt("%.2e", r.history.contraction_factor()) + " reference_gap=" + fmt("%.2e", gap)};
}

// 8. a priori bound over a suite of runs
Outcome apriori_suite() {
    const FieldFamily families[] = {FieldFamily::gaussian, FieldFamily::wave_packet, FieldFamily::random_bandlimited};
    const auto g = make_grid(512, 64.0);
    const double omega = EstimateParams::omega_for(1.5);
    std::vector<AprioriReport> reports(20);
    parallel_for(20, [&](std::size_t i) {
        FieldSpec spec;
        spec.family = families[i % 3];
        spec.amplitude = 0.1 + 0.05 * static_cast<double>(i);
        spec.width = 0.8 + 0.1 * static_cast<double>(i % 5);
        spec.center = -4.0 + 0.4 * static_cast<double>(i);
        spec.carrier = static_cast<double>(8 + i % 4) * g.spacing();
        spec.band = 3.0;
        spec.zero_mean = true;
        const auto traj = solve_reference(make_test_field(g, spec, 100 + i), 1.0, 1e-3, 1.5);
        reports[i] = apriori_check(traj, omega);
    });
    double max_c = 0.0, max_drift = 0.0;
    for (const auto& r : reports) {
        max_c = std::max(max_c, r.fitted_C);
        max_drift = std::max(max_drift, r.l2_drift);
    }
    return {max_c <= 10.0 && max_drift <= 1e-6, "max_fitted_C=" + fmt("%.4f", max_c) + " max_drift=" +
                                                    fmt("%.2e", max_drift)};
}

// 9. region partition
Outcome partition() {
    constexpr std::size_t kTuples = 1'000'000;
    constexpr std::size_t kChunks = 64;
    const double alpha = 1.5;
    std::vector<std::array<std::size_t, 5>> tallies(kChunks);
    parallel_for(kChunks, [&](std::size_t c) {
        std::mt19937_64 rng(derive_seed(11, c));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        auto& t = tallies[c];
        t = {};
        for (std::size_t n = 0; n < kTuples / kChunks; ++n) {
            const double scale = std::pow(10.0, 2.0 * u(rng) + 0.5);
            double x1 = scale * u(rng), x2 = scale * u(rng);
            // every other draw near the antidiagonal, where D22 lives
            if (n % 2) x1 = -x2 * (1.0 - 0.6 * std::abs(u(rng)));
            if (std::abs(x1) > std::abs(x2)) std::swap(x1, x2);
            const double t1 = 100.0 * u(rng), t2 = 100.0 * u(rng);
            const double l = modulation_weights(t1 + t2, x1 + x2, alpha).lambda;
            const double l1 = modulation_weights(t1, x1, alpha).lambda;
            const double l2 = modulation_weights(t2, x2, alpha).lambda;
            const auto label = classify_region(x1, x2, l, l1, l2);

            const double a1 = std::abs(x1), a2 = std::abs(x2), a = std::abs(x1 + x2);
            const bool d1 = 4.0 * a1 <= a2;
            const bool in_d22 = !d1 && x1 * x2 < 0.0 && a <= 0.5 * a1 && a2 >= 1.0;
            const bool member[4] = {d1 && a1 <= 2.0, d1 && a1 > 2.0,
                                    !d1 && (x1 * x2 > 0.0 || a >= 0.5 * a1 || a2 <= 1.0) && !in_d22, in_d22};
            int count = 0, which = -1;
            for (int k = 0; k < 4; ++k)
                if (member[k]) {
                    ++count;
                    which = k;
                }
            const double m = std::max({std::abs(l), std::abs(l1), std::abs(l2)});
            const ARegion expect_a = std::abs(l) == m ? ARegion::A : std::abs(l1) == m ? ARegion::A1 : ARegion::A2;
            bool ok = count == 1 && label.d_part == kDRegions[static_cast<std::size_t>(which)] &&
                      label.a_part == expect_a;
            if (label.d_part == DRegion::D22) ok = ok && x1 * x2 < 0.0 && a <= 0.5 * a1 && a2 >= 1.0;
            if (!ok) ++t[4];
            else ++t[static_cast<std::size_t>(which)];
        }
    });
    std::array<std::size_t, 5> total{};
    for (const auto& t : tallies)
        for (std::size_t k = 0; k < 5; ++k) total[k] += t[k];
    std::string detail = "violations=" + std::to_string(total[4]);
    for (std::size_t k = 0; k < 4; ++k) detail += " " + to_string(kDRegions[k]) + "=" + std::to_string(total[k]);
    return {total[4] == 0, detail};
}

struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"propagator_unitarity_group_law", 10, propagator},
        {"l2_conservation", 60, l2_conservation},
        {"resonance_lower_bound", 300, resonance_bound},
        {"ik_adjointness", 120, adjointness},
        {"strichartz_ratio", 300, strichartz},
        {"main_bilinear_ratio", 600, main_bilinear},
        {"picard_fixed_point", 300, picard},
        {"apriori_suite", 900, apriori_suite},
        {"region_partition", 30, partition},
    };
    std::printf("simd=%s workers=%zu\n", simd::isa_name(simd::active_isa()), worker_count());
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.budget_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::printf("[%s] %zu %s: %s time=%.1fs%s\n", pass ? "PASS" : "FAIL", i + 1, c.name, o.detail.c_str(), secs,
                    in_time ? "" : " (over budget)");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
