#include "fbo/ratio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fbo/bilinear.hpp"
#include "fbo/parallel.hpp"
#include "fbo/test_fields.hpp"

namespace fbo {

EstimateKind parse_estimate_kind(const std::string& name) {
    if (name == "strichartz") return EstimateKind::strichartz;
    if (name == "bilinear_str") return EstimateKind::bilinear_str;
    if (name == "dual_bilinear") return EstimateKind::dual_bilinear;
    if (name == "main_bilinear") return EstimateKind::main_bilinear;
    if (name == "smoothing") return EstimateKind::smoothing;
    throw std::invalid_argument("unknown estimate kind '" + name +
                                "' (expected strichartz, bilinear_str, dual_bilinear, main_bilinear, smoothing)");
}

std::string to_string(EstimateKind k) {
    switch (k) {
    case EstimateKind::strichartz: return "strichartz";
    case EstimateKind::bilinear_str: return "bilinear_str";
    case EstimateKind::dual_bilinear: return "dual_bilinear";
    case EstimateKind::main_bilinear: return "main_bilinear";
    case EstimateKind::smoothing: return "smoothing";
    }
    return "?";
}

std::vector<std::size_t> default_resolutions(EstimateKind kind) {
    switch (kind) {
    case EstimateKind::strichartz: return {256, 512};
    case EstimateKind::smoothing: return {1000, 10000};
    default: return {64, 128};
    }
}

double packet_tau_range(const RatioConfig& config, double alpha) {
    if (config.tau_range > 0.0) return config.tau_range;
    const auto& f = config.family;
    return 2.0 * (std::pow(f.center_max, 1.0 + alpha) + f.offset_max) + 3.0 * f.spread_max;
}

PacketField draw_packet_field(const PacketFamily& family, bool zero_mean, std::uint64_t seed) {
    if (family.max_packets == 0) throw std::invalid_argument("packet family: max_packets must be >= 1");
    std::mt19937_64 rng(seed);
    auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    PacketField f;
    f.zero_mean = zero_mean;
    const auto count = std::uniform_int_distribution<std::size_t>(1, family.max_packets)(rng);
    for (std::size_t i = 0; i < count; ++i) {
        Packet p;
        p.amplitude = std::polar(uniform(family.amplitude_min, family.amplitude_max),
                                 uniform(0.0, 2.0 * std::numbers::pi));
        p.center = uniform(-family.center_max, family.center_max);
        p.width = uniform(family.width_min, family.width_max);
        p.spread = uniform(family.spread_min, family.spread_max);
        const bool on_curve = uniform(0.0, 1.0) < 0.5;
        p.offset = on_curve ? 0.0 : uniform(-family.offset_max, family.offset_max);
        f.packets.push_back(p);
    }
    return f;
}

SpaceTimeField sample_packet_field(const PacketField& f, double alpha, double xi_range, double tau_range,
                                   std::size_t n_xi, std::size_t n_tau, double scale) {
    if (!(xi_range > 0.0) || !(tau_range > 0.0)) throw std::invalid_argument("packet grid: ranges must be positive");
    // Nyquist wavenumber n/2 sits at xi_range: L = pi n / xi_range.
    const auto sg = make_grid(n_xi, std::numbers::pi * static_cast<double>(n_xi) / xi_range);
    const auto tg = make_grid(n_tau, std::numbers::pi * static_cast<double>(n_tau) / tau_range);
    SpaceTimeField U(sg, tg);
    auto bump_at = [&](const Packet& p, double tau, double xi) {
        const double dx = (xi - p.center) / p.width;
        const double dl = (tau - dispersion(xi, alpha) - p.offset) / p.spread;
        return p.amplitude * std::exp(-0.5 * (dx * dx + dl * dl));
    };
    for (std::size_t k = 0; k + 1 < n_xi; ++k) {
        const double xi = sg.xi(k);
        const double notch = f.zero_mean ? xi * xi / (xi * xi + f.notch * f.notch) : 1.0;
        for (std::size_t m = 0; m + 1 < n_tau; ++m) {
            const double tau = tg.xi(m);
            cplx v{};
            for (const auto& p : f.packets) v += bump_at(p, tau, xi) + std::conj(bump_at(p, -tau, -xi));
            U.at(k, m) = scale * notch * v;
        }
    }
    return U;
}

namespace {

struct Outcome {
    double ratio = std::numeric_limits<double>::quiet_NaN();
    bool skipped = false;
    std::map<std::string, double> descriptor;
    std::array<double, 4> region_mass{};
};

struct Extremum {
    double ratio = std::numeric_limits<double>::quiet_NaN();
    std::size_t index = 0;
    std::size_t skipped = 0;
};

// Deterministic fold in sample order; ties keep the lower index.
Extremum fold(const std::vector<Outcome>& outcomes, bool infimum) {
    Extremum e;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        if (o.skipped) {
            ++e.skipped;
            continue;
        }
        const bool better = std::isnan(e.ratio) || (infimum ? o.ratio < e.ratio : o.ratio > e.ratio);
        if (better) {
            e.ratio = o.ratio;
            e.index = i;
        }
    }
    return e;
}

std::size_t d_index(DRegion d) { return static_cast<std::size_t>(d); }

Outcome strichartz_sample(const RatioConfig& c, const EstimateParams& p, std::size_t n, std::uint64_t seed) {
    const auto grid = make_grid(n, c.box_length);
    FieldSpec spec;
    spec.family = FieldFamily::random_bandlimited;
    spec.amplitude = c.amplitude_scale;
    spec.band = c.band;
    const auto u0 = make_test_field(grid, spec, seed);
    const auto ju0 = apply_multiplier(u0, MultiplierKind::bessel, 0.25 * (p.alpha - 1.0));

    Trajectory free, cut;
    free.alpha = cut.alpha = p.alpha;
    free.times = symmetric_time_axis(2.0 * c.T, c.dt);
    cut.times = free.times;
    for (double t : free.times) {
        free.states.push_back(propagate(u0, t, p.alpha));
        cut.states.push_back(cutoff_value(t, c.T) * propagate(ju0, t, p.alpha));
    }
    Outcome o;
    const double lhs = mixed_lebesgue_norm(cut, 4.0, kInf);
    const double rhs = bourgain_norm(localized_lift(free, c.T), p.alpha, 0.0, 0.0, p.b);
    if (rhs == 0.0) {
        o.skipped = true;
        return o;
    }
    o.ratio = lhs / rhs;
    o.descriptor = {{"lhs", lhs}, {"rhs", rhs}};
    return o;
}

struct TermTally {
    std::map<std::string, std::size_t> histogram;
};

// Labels every (tau1, xi1) term of the product whose size is at least 1e-3
// of the largest one.
TermTally tally_terms(const SpaceTimeField& a, const SpaceTimeField& b, double alpha) {
    const std::size_t nx = a.n_xi(), nt = a.n_tau();
    const long cx = static_cast<long>(nx / 2) - 1, ct = static_cast<long>(nt / 2) - 1;
    const long lastx = static_cast<long>(nx) - 2, lastt = static_cast<long>(nt) - 2;
    std::vector<double> lam(nx * nt), mag_a(nx * nt), mag_b(nx * nt);
    double max_a = 0.0, max_b = 0.0;
    for (std::size_t k = 0; k < nx; ++k)
        for (std::size_t m = 0; m < nt; ++m) {
            lam[k * nt + m] = std::abs(a.time_grid.xi(m) - dispersion(a.space_grid.xi(k), alpha));
            mag_a[k * nt + m] = std::abs(a.at(k, m));
            mag_b[k * nt + m] = std::abs(b.at(k, m));
            max_a = std::max(max_a, mag_a[k * nt + m]);
            max_b = std::max(max_b, mag_b[k * nt + m]);
        }
    TermTally tally;
    const double floor = 1e-3 * max_a * max_b;
    if (floor == 0.0) return tally;
    std::array<std::array<std::size_t, 3>, 4> counts{};
    for (long q = 0; q <= lastx; ++q) {
        const double xi = a.space_grid.xi(static_cast<std::size_t>(q));
        if (xi == 0.0) continue;
        for (long q1 = 0; q1 <= lastx; ++q1) {
            const long q2 = q - q1 + cx;
            if (q2 < 0 || q2 > lastx) continue;
            const double xi1 = a.space_grid.xi(static_cast<std::size_t>(q1));
            const double xi2 = a.space_grid.xi(static_cast<std::size_t>(q2));
            // Symmetry reduction: the factor of smaller modulus comes first.
            const bool swap = std::abs(xi1) > std::abs(xi2);
            const DRegion d = swap ? classify_frequencies(xi2, xi1) : classify_frequencies(xi1, xi2);
            for (long m = 0; m <= lastt; ++m)
                for (long m1 = std::max(0L, m + ct - lastt); m1 <= std::min(lastt, m + ct); ++m1) {
                    const long m2 = m - m1 + ct;
                    const std::size_t i1 = static_cast<std::size_t>(q1) * nt + static_cast<std::size_t>(m1);
                    const std::size_t i2 = static_cast<std::size_t>(q2) * nt + static_cast<std::size_t>(m2);
                    if (mag_a[i1] * mag_b[i2] < floor) continue;
                    const double l = lam[static_cast<std::size_t>(q) * nt + static_cast<std::size_t>(m)];
                    const double l1 = swap ? lam[i2] : lam[i1];
                    const double l2 = swap ? lam[i1] : lam[i2];
                    ++counts[d_index(d)][static_cast<std::size_t>(classify_modulations(l, l1, l2))];
                }
        }
    }
    for (auto d : kDRegions)
        for (auto r : kARegions) {
            const auto n = counts[d_index(d)][static_cast<std::size_t>(r)];
            if (n > 0) tally.histogram[to_string(d) + "/" + to_string(r)] = n;
        }
    return tally;
}

struct PacketContext {
    EstimateKind kind;
    const RatioConfig* config;
    const EstimateParams* params;
    double tau_range;
    std::size_t n_xi, n_tau;
    std::vector<double> lhs_weight; // main_bilinear: X_{s,omega,b'} weight per output cell
};

Outcome packet_sample(const PacketContext& ctx, std::uint64_t seed, std::size_t index) {
    const auto& c = *ctx.config;
    const auto& p = *ctx.params;
    const bool zero_mean = ctx.kind == EstimateKind::main_bilinear && p.omega > 0.0;
    const auto f1 = draw_packet_field(c.family, zero_mean, derive_seed(seed, 2 * index));
    const auto f2 = draw_packet_field(c.family, zero_mean, derive_seed(seed, 2 * index + 1));
    const auto u1 = sample_packet_field(f1, p.alpha, c.xi_range, ctx.tau_range, ctx.n_xi, ctx.n_tau, c.amplitude_scale);
    const auto u2 = sample_packet_field(f2, p.alpha, c.xi_range, ctx.tau_range, ctx.n_xi, ctx.n_tau, c.amplitude_scale);

    Outcome o;
    double lhs = 0.0, rhs = 0.0;
    switch (ctx.kind) {
    case EstimateKind::bilinear_str:
        lhs = spacetime_l2_norm(bilinear_I(u1, u2, 0.5 * p.alpha));
        rhs = bourgain_norm(u1, p.alpha, 0.0, 0.0, p.b) * bourgain_norm(u2, p.alpha, 0.0, 0.0, p.b);
        break;
    case EstimateKind::dual_bilinear:
        lhs = bourgain_norm(bilinear_K(u1, u2, p.alpha), p.alpha, 0.0, 0.0, -p.b);
        rhs = bourgain_norm(u1, p.alpha, 0.0, 0.0, p.b) * spacetime_l2_norm(u2);
        break;
    case EstimateKind::main_bilinear: {
        const std::size_t nt = ctx.n_tau;
        auto observer = [&](std::size_t q, std::size_t q1, std::size_t q2, std::span<const cplx> col) {
            const double xi1 = u1.space_grid.xi(q1), xi2 = u1.space_grid.xi(q2);
            const DRegion d = std::abs(xi1) <= std::abs(xi2) ? classify_frequencies(xi1, xi2)
                                                             : classify_frequencies(xi2, xi1);
            double mass = 0.0;
            const double* w = ctx.lhs_weight.data() + q * nt;
            for (std::size_t m = 0; m < nt; ++m) mass += w[m] * std::norm(col[m]);
            o.region_mass[d_index(d)] += mass;
        };
        const auto prod = derivative_of_product(u1, u2, observer);
        lhs = bourgain_norm(prod, p.alpha, p.s, p.omega, p.b_prime);
        // Right side with s0 = s: both products coincide.
        rhs = 2.0 * bourgain_norm(u1, p) * bourgain_norm(u2, p);
        break;
    }
    default: throw std::logic_error("packet_sample: not a space-time kind");
    }
    if (rhs == 0.0) {
        o.skipped = true;
        return o;
    }
    o.ratio = lhs / rhs;
    o.descriptor = {{"lhs", lhs},
                    {"rhs", rhs},
                    {"u1_packets", double(f1.packets.size())},
                    {"u2_packets", double(f2.packets.size())},
                    {"u1_center", f1.packets.front().center},
                    {"u2_center", f2.packets.front().center},
                    {"u1_offset", f1.packets.front().offset},
                    {"u2_offset", f2.packets.front().offset}};
    return o;
}

Outcome smoothing_sample(double alpha, double beta, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double mag = std::pow(10.0, std::uniform_real_distribution<double>(-3.0, 3.0)(rng));
    const double xi2 = std::bernoulli_distribution(0.5)(rng) ? mag : -mag;
    const double xi1 = beta * xi2;
    const double xi = (1.0 + beta) * xi2;
    const double lhs = std::sqrt(std::abs(std::pow(std::abs(xi1), alpha) - std::pow(std::abs(xi2), alpha)));
    const double rhs = 0.5 * std::sqrt(std::abs(xi)) * std::pow(std::abs(xi2), 0.5 * (alpha - 1.0));
    Outcome o;
    if (rhs == 0.0) {
        o.skipped = true;
        return o;
    }
    o.ratio = lhs / rhs;
    o.descriptor = {{"beta", beta}, {"xi1", xi1}, {"xi2", xi2}};
    return o;
}

} // namespace

RatioReport estimate_ratio(EstimateKind kind, const RatioConfig& config, const EstimateParams& p, std::uint64_t seed) {
    p.validate();
    const auto resolutions = config.resolutions.empty() ? default_resolutions(kind) : config.resolutions;
    if (resolutions.empty()) throw std::invalid_argument("estimate_ratio: no resolutions");
    if (kind != EstimateKind::smoothing && config.samples == 0)
        throw std::invalid_argument("estimate_ratio: empty sample set");
    if (!(config.amplitude_scale > 0.0)) throw std::invalid_argument("estimate_ratio: amplitude_scale must be positive");

    RatioReport report;
    report.kind = to_string(kind);
    report.infimum = kind == EstimateKind::smoothing;
    report.seed = seed;
    report.params = p;

    std::vector<Outcome> outcomes;
    for (std::size_t level = 0; level < resolutions.size(); ++level) {
        const std::size_t n = resolutions[level];
        switch (kind) {
        case EstimateKind::strichartz:
            outcomes.assign(config.samples, {});
            parallel_for(config.samples, [&](std::size_t i) {
                outcomes[i] = strichartz_sample(config, p, n, derive_seed(seed, i));
            });
            break;
        case EstimateKind::smoothing:
            if (n < 2) throw std::invalid_argument("smoothing: resolution must be >= 2");
            outcomes.assign(n, {});
            parallel_for(n, [&](std::size_t j) {
                const double beta = -1.0 + 0.75 * static_cast<double>(j) / static_cast<double>(n - 1);
                outcomes[j] = smoothing_sample(p.alpha, beta, derive_seed(seed, j));
            });
            break;
        default: {
            PacketContext ctx{kind, &config, &p, packet_tau_range(config, p.alpha), n, n * config.tau_factor, {}};
            if (kind == EstimateKind::main_bilinear) {
                const auto probe = sample_packet_field({}, p.alpha, config.xi_range, ctx.tau_range, ctx.n_xi, ctx.n_tau);
                ctx.lhs_weight.resize(ctx.n_xi * ctx.n_tau);
                for (std::size_t k = 0; k < ctx.n_xi; ++k)
                    for (std::size_t m = 0; m < ctx.n_tau; ++m)
                        ctx.lhs_weight[k * ctx.n_tau + m] = bourgain_weight(
                            probe.time_grid.xi(m), probe.space_grid.xi(k), p.alpha, p.s, p.omega, p.b_prime);
            }
            outcomes.assign(config.samples, {});
            parallel_for(config.samples, [&](std::size_t i) { outcomes[i] = packet_sample(ctx, seed, i); });
        }
        }
        const auto e = fold(outcomes, report.infimum);
        report.refinement_trend.push_back({n, e.ratio});
        if (level + 1 < resolutions.size()) continue;

        // Reported statistics come from the finest resolution.
        report.ratio = e.ratio;
        report.skipped = e.skipped;
        report.sample_count = outcomes.size() - e.skipped;
        if (report.sample_count == 0) throw std::runtime_error("estimate_ratio: every sample had a vanishing right side");
        report.extremal_sample = outcomes[e.index].descriptor;
        report.extremal_sample["index"] = static_cast<double>(e.index);
        report.extremal_sample["resolution"] = static_cast<double>(n);

        if (kind == EstimateKind::main_bilinear) {
            std::array<double, 4> total{};
            for (const auto& o : outcomes) {
                if (o.skipped) continue;
                double sum = 0.0;
                for (double m : o.region_mass) sum += m;
                if (sum <= 0.0) continue;
                std::size_t dominant = 0;
                for (std::size_t d = 0; d < 4; ++d) {
                    total[d] += o.region_mass[d] / sum;
                    if (o.region_mass[d] >= 0.01 * sum) ++report.region_sample_counts[d];
                    if (o.region_mass[d] > o.region_mass[dominant]) dominant = d;
                }
                ++report.dominant_region_counts[dominant];
            }
            for (std::size_t d = 0; d < 4; ++d)
                report.region_mass_fraction[d] = total[d] / static_cast<double>(report.sample_count);
            if (config.record_terms) {
                const bool zero_mean = p.omega > 0.0;
                const double tr = packet_tau_range(config, p.alpha);
                const auto f1 = draw_packet_field(config.family, zero_mean, derive_seed(seed, 2 * e.index));
                const auto f2 = draw_packet_field(config.family, zero_mean, derive_seed(seed, 2 * e.index + 1));
                const std::size_t nt = n * config.tau_factor;
                report.extremal_term_histogram =
                    tally_terms(sample_packet_field(f1, p.alpha, config.xi_range, tr, n, nt, config.amplitude_scale),
                                sample_packet_field(f2, p.alpha, config.xi_range, tr, n, nt, config.amplitude_scale),
                                p.alpha)
                        .histogram;
            }
        }
    }
    return report;
}

} // namespace fbo
