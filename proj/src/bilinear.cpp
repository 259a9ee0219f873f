#include "fbo/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fbo/simd.hpp"

namespace fbo {

namespace {

void require_matching(const SpaceTimeField& a, const SpaceTimeField& b) {
    if (!a.same_grids(b)) throw std::invalid_argument("bilinear operator: input grids do not match");
}

} // namespace

SpaceTimeField weighted_convolution(const SpaceTimeField& a, const SpaceTimeField& b, const FrequencyKernel& kernel,
                                    const ColumnObserver& observer) {
    require_matching(a, b);
    const std::size_t nx = a.n_xi(), nt = a.n_tau();
    // Participating slots are 0 .. n-2; slot c holds wavenumber 0.
    const long cx = static_cast<long>(nx / 2) - 1, ct = static_cast<long>(nt / 2) - 1;
    const long lastx = static_cast<long>(nx) - 2, lastt = static_cast<long>(nt) - 2;
    const double measure = a.cell_measure();

    // Reversed tau columns of b turn the tau convolution into contiguous dot products.
    std::vector<cplx> brev(b.coeffs.size());
    for (std::size_t k = 0; k < nx; ++k)
        for (long j = 0; j <= lastt; ++j) brev[k * nt + static_cast<std::size_t>(j)] = b.at(k, static_cast<std::size_t>(lastt - j));

    SpaceTimeField out(a.space_grid, a.time_grid);
    std::vector<cplx> column(nt);
    for (long q = 0; q <= lastx; ++q) {
        const double xi = a.space_grid.xi(static_cast<std::size_t>(q));
        for (long q1 = 0; q1 <= lastx; ++q1) {
            const long q2 = q - q1 + cx;
            if (q2 < 0 || q2 > lastx) continue;
            const double xi1 = a.space_grid.xi(static_cast<std::size_t>(q1));
            const double xi2 = a.space_grid.xi(static_cast<std::size_t>(q2));
            const double w = kernel(xi, xi1, xi2);
            if (w == 0.0) continue;
            const cplx* acol = a.coeffs.data() + static_cast<std::size_t>(q1) * nt;
            const cplx* bcol = brev.data() + static_cast<std::size_t>(q2) * nt;
            std::fill(column.begin(), column.end(), cplx{});
            for (long m = 0; m <= lastt; ++m) {
                const long lo = std::max(0L, m + ct - lastt);
                const long hi = std::min(lastt, m + ct);
                if (hi < lo) continue;
                const long start = lastt - m + lo - ct;
                column[static_cast<std::size_t>(m)] =
                    (w * measure) * simd::dot(acol + lo, bcol + start, static_cast<std::size_t>(hi - lo + 1));
            }
            auto dst = out.column(static_cast<std::size_t>(q));
            for (long m = 0; m <= lastt; ++m) dst[static_cast<std::size_t>(m)] += column[static_cast<std::size_t>(m)];
            if (observer)
                observer(static_cast<std::size_t>(q), static_cast<std::size_t>(q1), static_cast<std::size_t>(q2), column);
        }
    }
    return out;
}

SpaceTimeField bilinear_I(const SpaceTimeField& u1, const SpaceTimeField& u2, double s) {
    return weighted_convolution(u1, u2, [s](double, double xi1, double xi2) {
        return std::sqrt(std::abs(std::pow(std::abs(xi1), 2.0 * s) - std::pow(std::abs(xi2), 2.0 * s)));
    });
}

SpaceTimeField conjugate_reflect(const SpaceTimeField& u) {
    SpaceTimeField out(u.space_grid, u.time_grid);
    const std::size_t nx = u.n_xi(), nt = u.n_tau();
    // Reflection about the zero slot c maps slot j to 2c - j; the extreme slot has no partner.
    const long cx = static_cast<long>(nx / 2) - 1, ct = static_cast<long>(nt / 2) - 1;
    for (long k = 0; k + 1 < static_cast<long>(nx); ++k)
        for (long m = 0; m + 1 < static_cast<long>(nt); ++m)
            out.at(static_cast<std::size_t>(k), static_cast<std::size_t>(m)) =
                std::conj(u.at(static_cast<std::size_t>(2 * cx - k), static_cast<std::size_t>(2 * ct - m)));
    return out;
}

SpaceTimeField bilinear_K(const SpaceTimeField& u1, const SpaceTimeField& u2, double alpha) {
    require_matching(u1, u2);
    return weighted_convolution(conjugate_reflect(u1), u2, [alpha](double xi, double xi1, double) {
        return std::sqrt(std::abs(std::pow(std::abs(xi), alpha) - std::pow(std::abs(xi1), alpha)));
    });
}

SpaceTimeField derivative_of_product(const SpaceTimeField& u1, const SpaceTimeField& u2,
                                     const ColumnObserver& observer) {
    const double scale = 1.0 / (2.0 * std::numbers::pi);
    ColumnObserver scaled_observer;
    std::vector<cplx> scaled;
    if (observer) {
        scaled_observer = [&](std::size_t q, std::size_t q1, std::size_t q2, std::span<const cplx> col) {
            const cplx factor(0.0, scale * u1.space_grid.xi(q));
            scaled.assign(col.begin(), col.end());
            for (auto& c : scaled) c *= factor;
            observer(q, q1, q2, scaled);
        };
    }
    SpaceTimeField out = weighted_convolution(u1, u2, [](double, double, double) { return 1.0; }, scaled_observer);
    for (std::size_t k = 0; k < out.n_xi(); ++k) {
        const cplx factor(0.0, scale * out.space_grid.xi(k));
        for (auto& c : out.column(k)) c *= factor;
    }
    return out;
}

cplx spacetime_inner(const SpaceTimeField& a, const SpaceTimeField& b) {
    require_matching(a, b);
    cplx acc{};
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) acc += a.coeffs[i] * std::conj(b.coeffs[i]);
    return acc * a.cell_measure();
}

} // namespace fbo
