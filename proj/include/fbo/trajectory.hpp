#pragma once

#include <cstddef>
#include <vector>

#include "fbo/spectral.hpp"

namespace fbo {

// Uniformly sampled solution on a symmetric window [-T_span, T_span]; one
// state per time, all on one grid.
struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralField> states;
    double alpha = 1.5;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
    double dt() const;
    const FrequencyGrid& grid() const { return states.front().grid; }
    // Slot whose time is nearest t (t must lie inside the window).
    std::size_t index_at(double t) const;
    std::size_t origin_index() const { return index_at(0.0); }
    double t_min() const { return times.front(); }
    double t_max() const { return times.back(); }

    // Throws when spacing is not uniform or grids differ.
    void validate() const;
};

// Times -K dt, ..., K dt with K = T_span / dt (must be an integer to 1e-9).
std::vector<double> symmetric_time_axis(double t_span, double dt);

} // namespace fbo
