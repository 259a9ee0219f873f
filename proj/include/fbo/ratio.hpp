#pragma once

// Empirical ratio tests: sup (or inf) over a declared test family of
// left side / right side, evaluated at two or more grid resolutions.

#include <cstdint>
#include <string>
#include <vector>

#include "fbo/estimates.hpp"
#include "fbo/norms.hpp"

namespace fbo {

enum class EstimateKind { strichartz, bilinear_str, dual_bilinear, main_bilinear, smoothing };

EstimateKind parse_estimate_kind(const std::string& name);
std::string to_string(EstimateKind k);

// One Gaussian bump in (tau, xi) riding on the dispersion curve:
// a exp(-(xi-c)^2/2w^2) exp(-(tau - xi|xi|^alpha - mu)^2/2nu^2).
struct Packet {
    cplx amplitude{1.0, 0.0};
    double center = 0.0;
    double width = 1.0;
    double offset = 0.0;
    double spread = 50.0;
};

// Real-valued space-time field built from packets plus their conjugate
// mirror images. With zero_mean the transform is multiplied by
// xi^2/(xi^2 + r^2), which vanishes at xi = 0.
struct PacketField {
    std::vector<Packet> packets;
    bool zero_mean = true;
    double notch = 0.5;
};

struct PacketFamily {
    std::size_t max_packets = 3;
    double center_max = 8.0;
    double width_min = 1.0, width_max = 2.5;
    double spread_min = 40.0, spread_max = 120.0;
    double offset_max = 150.0;
    double amplitude_min = 0.5, amplitude_max = 1.5;
};

PacketField draw_packet_field(const PacketFamily& family, bool zero_mean, std::uint64_t seed);

// Packet grid: n_xi modes on [-xi_range, xi_range], n_tau modes on [-tau_range, tau_range].
SpaceTimeField sample_packet_field(const PacketField& f, double alpha, double xi_range, double tau_range,
                                   std::size_t n_xi, std::size_t n_tau, double scale = 1.0);

struct RatioConfig {
    std::size_t samples = 200;
    // Grid sizes for the refinement trend; empty selects the kind's default
    // ({256, 512} for strichartz, {64, 128} for the space-time kinds,
    // {1000, 10000} beta points for smoothing).
    std::vector<std::size_t> resolutions;
    // Multiplies every input; ratios are invariant under it.
    double amplitude_scale = 1.0;

    // strichartz: random band-limited data, u(t) = psi_T(t) W(t) u0.
    double box_length = 32.0;
    double band = 6.0;
    double T = 1.0;
    double dt = 0.005;

    // space-time kinds
    PacketFamily family;
    double xi_range = 20.0;
    // 0 selects 2 (center_max^{1+alpha} + offset_max) + 3 spread_max, wide
    // enough to hold products of two packets.
    double tau_range = 0.0;
    // n_tau = tau_factor * n_xi
    std::size_t tau_factor = 1;
    // main_bilinear: tally (D, A) labels of individual terms at the extremal sample.
    bool record_terms = true;
};

std::vector<std::size_t> default_resolutions(EstimateKind kind);
double packet_tau_range(const RatioConfig& config, double alpha);

RatioReport estimate_ratio(EstimateKind kind, const RatioConfig& config, const EstimateParams& p, std::uint64_t seed);

} // namespace fbo
