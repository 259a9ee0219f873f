#include "fbo/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fbo/evolution.hpp"

namespace fbo {

static_assert(std::endian::native == std::endian::little, "binary trajectory format assumes a little-endian host");

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::size_t stride) {
    if (stride == 0) throw std::invalid_argument("trajectory csv: stride must be >= 1");
    if (traj.empty()) throw std::invalid_argument("trajectory csv: empty trajectory");
    const auto& g = traj.grid();
    const long kc = static_cast<long>(dealias_cutoff(g));
    os << "t";
    for (long k = -kc; k <= kc; ++k) os << ",abs_" << k << ",arg_" << k;
    os << '\n';
    for (std::size_t i = 0; i < traj.size(); i += stride) {
        os << format_number(traj.times[i]);
        for (long k = -kc; k <= kc; ++k) {
            const cplx c = traj.states[i].at_wavenumber(k);
            os << ',' << format_number(std::abs(c)) << ',' << format_number(std::arg(c));
        }
        os << '\n';
    }
}

namespace {

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw std::runtime_error("trajectory binary: truncated input");
    return v;
}

} // namespace

void write_trajectory_binary(std::ostream& os, const Trajectory& traj) {
    if (traj.empty()) throw std::invalid_argument("trajectory binary: empty trajectory");
    const auto& g = traj.grid();
    os.write("FBOT", 4);
    put<std::uint32_t>(os, kTrajectoryFormatVersion);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(g.size()));
    put<double>(os, g.box_length());
    put<double>(os, traj.size() > 1 ? traj.dt() : 0.0);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(traj.size()));
    for (std::size_t i = 0; i < traj.size(); ++i) {
        put<double>(os, traj.times[i]);
        for (auto c : traj.states[i].coeffs) {
            put<double>(os, c.real());
            put<double>(os, c.imag());
        }
    }
    if (!os) throw std::runtime_error("trajectory binary: write failed");
}

Trajectory read_trajectory_binary(std::istream& is, double alpha) {
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "FBOT", 4) != 0)
        throw std::runtime_error("trajectory binary: bad magic");
    const auto version = get<std::uint32_t>(is);
    if (version != kTrajectoryFormatVersion)
        throw std::runtime_error("trajectory binary: unsupported version " + std::to_string(version));
    const auto n = get<std::uint32_t>(is);
    const double L = get<double>(is);
    get<double>(is);
    const auto count = get<std::uint32_t>(is);
    const auto grid = make_grid(n, L);
    Trajectory traj;
    traj.alpha = alpha;
    traj.times.reserve(count);
    traj.states.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        traj.times.push_back(get<double>(is));
        SpectralField u(grid);
        for (auto& c : u.coeffs) {
            const double re = get<double>(is);
            c = {re, get<double>(is)};
        }
        traj.states.push_back(std::move(u));
    }
    return traj;
}

nlohmann::json to_json(const EstimateParams& p) {
    return {{"alpha", p.alpha}, {"s", p.s},           {"omega", p.omega},
            {"b", p.b},         {"b_prime", p.b_prime}, {"epsilon", p.epsilon},
            {"enforce_admissible", p.enforce_admissible}};
}

nlohmann::json to_json(const RatioReport& r) {
    nlohmann::json j;
    j["kind"] = r.kind;
    j[r.infimum ? "inf_ratio" : "sup_ratio"] = r.ratio;
    j[r.infimum ? "argmin" : "argmax"] = r.extremal_sample;
    j["sample_count"] = r.sample_count;
    j["skipped"] = r.skipped;
    auto& trend = j["refinement_trend"] = nlohmann::json::array();
    for (const auto& p : r.refinement_trend) trend.push_back({{"resolution", p.resolution}, {"ratio", p.ratio}});
    j["seed"] = r.seed;
    j["params"] = to_json(r.params);
    if (r.kind == "main_bilinear") {
        nlohmann::json regions;
        for (auto d : kDRegions) {
            const auto i = static_cast<std::size_t>(d);
            regions[to_string(d)] = {{"mass_fraction", r.region_mass_fraction[i]},
                                     {"samples", r.region_sample_counts[i]},
                                     {"dominant", r.dominant_region_counts[i]}};
        }
        j["regions"] = regions;
        j["extremal_terms"] = r.extremal_term_histogram;
    }
    return j;
}

std::string ratio_csv_header() { return "kind,alpha,s,b,b_prime,sup_or_inf,n_samples,resolution,seed"; }

std::string ratio_csv_row(const RatioReport& r) {
    std::ostringstream os;
    const auto resolution = r.refinement_trend.empty() ? 0 : r.refinement_trend.back().resolution;
    os << r.kind << ',' << format_number(r.params.alpha) << ',' << format_number(r.params.s) << ','
       << format_number(r.params.b) << ',' << format_number(r.params.b_prime) << ',' << format_number(r.ratio) << ','
       << r.sample_count << ',' << resolution << ',' << r.seed;
    return os.str();
}

std::string apriori_csv_header() { return "run_id,alpha,omega,T,initial_norm,sup_norm,fitted_C,l2_drift"; }

std::string apriori_csv_row(const std::string& run_id, const AprioriReport& r) {
    std::ostringstream os;
    os << run_id << ',' << format_number(r.alpha) << ',' << format_number(r.omega) << ',' << format_number(r.T) << ','
       << format_number(r.initial_norm) << ',' << format_number(r.sup_norm) << ',' << format_number(r.fitted_C) << ','
       << format_number(r.l2_drift);
    return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

} // namespace fbo
