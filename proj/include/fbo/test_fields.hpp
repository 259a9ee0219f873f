#pragma once

// Deterministic smooth test data standing in for Schwartz functions.

#include <cstdint>
#include <string>

#include "fbo/spectral.hpp"

namespace fbo {

enum class FieldFamily { gaussian, wave_packet, random_bandlimited };

FieldFamily parse_family(const std::string& name);
std::string to_string(FieldFamily f);

struct FieldSpec {
    FieldFamily family = FieldFamily::gaussian;
    // gaussian / wave_packet: amplitude * exp(-((x - center)/width)^2), the
    // packet additionally modulated by cos(carrier * x).
    double amplitude = 1.0;
    double width = 1.0;
    double center = 0.0;
    // Must be a grid frequency.
    double carrier = 0.0;
    // random_bandlimited: modes with |xi| <= band get complex normal
    // amplitudes, rescaled so the L2 norm equals `amplitude`.
    double band = 4.0;
    // Drop the xi = 0 mode (needed whenever the singular weight |xi|^{-omega} is used).
    bool zero_mean = false;
    // random_bandlimited only: skip the conjugate-symmetry projection.
    bool complex_valued = false;
};

SpectralField make_test_field(const FrequencyGrid& grid, const FieldSpec& spec, std::uint64_t seed);

} // namespace fbo
