#include "fbo/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fbo/conservation.hpp"
#include "fbo/estimates.hpp"
#include "fbo/evolution.hpp"
#include "fbo/io.hpp"
#include "fbo/parallel.hpp"
#include "fbo/ratio.hpp"
#include "fbo/simd.hpp"
#include "fbo/test_fields.hpp"

namespace fbo {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kSubcommands{"simulate", "picard", "verify-resonance", "verify-estimate", "sweep"};

struct RawOptions {
    std::vector<double> alpha;
    std::vector<std::string> s;
    std::string b = "auto", b_prime = "auto", epsilon = "auto";
    std::optional<std::size_t> n_modes, samples;
    std::optional<double> box_length, t_span, dt, T;
    std::uint64_t seed = 1;
    std::string out = "fbo_out";
    std::string kind = "main_bilinear";
    std::vector<std::size_t> resolutions;
    std::string family = "gaussian";
    double amplitude = 0.5;
    double width = 1.0;
    double l2_norm = 0.0;
    bool zero_mean = true;
    double tol = 1e-10;
    std::size_t max_iter = 50;
    std::string scheme = "split_step";
    std::size_t stride = 10;
};

std::optional<double> parse_auto(const std::string& key, const std::string& v) {
    if (v == "auto") return std::nullopt;
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("--" + key + ": expected a number or 'auto', got '" + v + "'");
    }
}

void add_options(CLI::App& app, RawOptions& o) {
    app.add_option("--alpha", o.alpha, "Dispersion exponent(s) in (1,2)")->delimiter(',');
    app.add_option("--s", o.s, "Regularity index list, or auto")->delimiter(',');
    app.add_option("--b", o.b, "Bourgain exponent b, or auto");
    app.add_option("--b-prime", o.b_prime, "Bourgain exponent b' for the product, or auto");
    app.add_option("--epsilon", o.epsilon, "Distance of s above threshold, or auto");
    app.add_option("--n-modes", o.n_modes, "Spatial modes (even)");
    app.add_option("--box-length", o.box_length, "Periodic box length");
    app.add_option("--t-span", o.t_span, "Half-width of the time window");
    app.add_option("--dt", o.dt, "Time step");
    app.add_option("--samples", o.samples, "Sample count");
    app.add_option("--seed", o.seed, "Master seed");
    app.add_option("--out", o.out, "Output directory");
    app.add_option("--kind", o.kind, "Estimate kind");
    app.add_option("--resolutions", o.resolutions, "Grid sizes for refinement trends")->delimiter(',');
    app.add_option("--family", o.family, "Initial data family");
    app.add_option("--amplitude", o.amplitude, "Initial data amplitude");
    app.add_option("--width", o.width, "Initial data width");
    app.add_option("--l2-norm", o.l2_norm, "Rescale initial data to this L2 norm (0 = off)");
    app.add_option("--zero-mean", o.zero_mean, "Drop the xi = 0 mode of the initial data");
    app.add_option("--T", o.T, "Cutoff time scale");
    app.add_option("--tol", o.tol, "Picard tolerance");
    app.add_option("--max-iter", o.max_iter, "Picard iteration cap");
    app.add_option("--scheme", o.scheme, "split_step or exponential_integrator");
    app.add_option("--stride", o.stride, "Time stride of trajectory CSV rows");
}

template <class T>
T pick(const std::optional<T>& v, T fallback) {
    return v ? *v : fallback;
}

ExperimentConfig materialize(const std::string& sub, const RawOptions& o) {
    ExperimentConfig c;
    c.subcommand = sub;
    c.alpha = o.alpha;
    if (c.alpha.empty())
        c.alpha = sub == "verify-resonance" ? std::vector<double>{1.1, 1.3, 1.5, 1.7, 1.9} : std::vector<double>{1.5};
    for (const auto& v : o.s) {
        const auto d = parse_auto("s", v);
        if (d) c.s.push_back(*d);
    }
    c.b = parse_auto("b", o.b);
    c.b_prime = parse_auto("b-prime", o.b_prime);
    c.epsilon = parse_auto("epsilon", o.epsilon);

    const bool estimate = sub == "verify-estimate" || sub == "sweep";
    c.n_modes = pick<std::size_t>(o.n_modes, sub == "picard" ? 512 : 1024);
    c.box_length = pick(o.box_length, estimate ? 32.0 : sub == "picard" ? 64.0 : 128.0);
    c.t_span = pick(o.t_span, 1.0);
    c.dt = pick(o.dt, estimate ? 0.005 : 1e-3);
    std::size_t samples = 200;
    if (sub == "verify-resonance") samples = 1'000'000;
    if (sub == "sweep") samples = 20;
    c.samples = pick(o.samples, samples);
    c.seed = o.seed;
    c.out = o.out;
    c.kind = o.kind;
    c.resolutions = o.resolutions;
    c.family = o.family;
    c.amplitude = o.amplitude;
    c.width = o.width;
    c.l2_norm = o.l2_norm;
    c.zero_mean = o.zero_mean;
    c.T = pick(o.T, sub == "picard" ? 0.5 : 1.0);
    c.tol = o.tol;
    c.max_iter = o.max_iter;
    c.scheme = o.scheme;
    c.stride = o.stride;

    // Early validation of the enumerated and structural values.
    try {
        parse_family(c.family);
        parse_scheme(c.scheme);
        const auto kind = parse_estimate_kind(c.kind);
        if (estimate && c.resolutions.empty())
            c.resolutions = default_resolutions(sub == "sweep" ? EstimateKind::main_bilinear : kind);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (c.stride == 0) throw ConfigError("--stride must be >= 1");
    if (!(c.dt > 0.0)) throw ConfigError("--dt must be positive");
    if (!(c.T > 0.0)) throw ConfigError("--T must be positive");
    if (c.l2_norm < 0.0) throw ConfigError("--l2-norm must be >= 0");
    for (double a : c.alpha)
        if (!(a > 1.0 && a < 2.0)) throw ConfigError("--alpha values must lie in (1, 2)");
    return c;
}

std::string list_text(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_number(v[i]);
    return s + "]";
}

std::string opt_text(const std::optional<double>& v) { return v ? format_number(*v) : "\"auto\""; }

// ---------------------------------------------------------------------------

struct Artifacts {
    fs::path dir;
    std::vector<std::string> files;

    void write(const std::string& name, const std::string& text) {
        write_text_file(dir / name, text);
        files.push_back(name);
    }
    void write_binary(const std::string& name, const Trajectory& traj) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open '" + (dir / name).string() + "' for writing");
        write_trajectory_binary(out, traj);
        files.push_back(name);
    }
};

std::string tag(double alpha) { return "a" + format_number(alpha); }

SpectralField initial_field(const ExperimentConfig& c, const FrequencyGrid& grid) {
    FieldSpec spec;
    spec.family = parse_family(c.family);
    spec.amplitude = c.amplitude;
    spec.width = c.width;
    spec.zero_mean = c.zero_mean;
    auto u0 = make_test_field(grid, spec, c.seed);
    if (c.l2_norm > 0.0) {
        const double n = l2_norm(u0);
        if (n == 0.0) throw ConfigError("--l2-norm given but the initial field vanishes");
        u0 *= c.l2_norm / n;
    }
    return u0;
}

EstimateParams params_for(const ExperimentConfig& c, double alpha, std::optional<double> s, bool admissible) {
    const double eps = c.epsilon.value_or(std::min(0.1, 0.25 * (alpha - 1.0)));
    auto p = EstimateParams::admissible_defaults(alpha, eps);
    if (s) p.s = *s;
    if (c.b_prime) p.b_prime = *c.b_prime;
    if (c.b) p.b = *c.b;
    p.enforce_admissible = admissible;
    return p;
}

RatioConfig ratio_config(const ExperimentConfig& c) {
    RatioConfig rc;
    rc.samples = c.samples;
    rc.resolutions = c.resolutions;
    rc.box_length = c.box_length;
    rc.T = c.T;
    rc.dt = c.dt;
    return rc;
}

void run_simulate(const ExperimentConfig& c, Artifacts& art, std::ostream& log) {
    SolverOptions opts;
    opts.scheme = parse_scheme(c.scheme);
    std::string apriori = apriori_csv_header() + "\n";
    for (double alpha : c.alpha) {
        const auto grid = make_grid(c.n_modes, c.box_length);
        const auto u0 = initial_field(c, grid);
        const auto traj = solve_reference(u0, c.t_span, c.dt, alpha, opts);
        const auto report = apriori_check(traj, EstimateParams::omega_for(alpha));
        std::ostringstream csv;
        write_trajectory_csv(csv, traj, c.stride);
        art.write("trajectory_" + tag(alpha) + ".csv", csv.str());
        art.write_binary("trajectory_" + tag(alpha) + ".bin", traj);
        apriori += apriori_csv_row("simulate-" + tag(alpha), report) + "\n";
        nlohmann::json j{{"alpha", alpha},
                         {"l2_drift", report.l2_drift},
                         {"initial_l2", l2_norm(u0)},
                         {"cfl", cfl_number(u0, c.dt)},
                         {"sup_norm", report.sup_norm},
                         {"initial_norm", report.initial_norm},
                         {"fitted_C", report.fitted_C},
                         {"forcing_ratio", report.forcing_ratio}};
        art.write("simulate_" + tag(alpha) + ".json", j.dump(2) + "\n");
        log << "simulate alpha=" << format_number(alpha) << " l2_drift=" << format_number(report.l2_drift)
            << " fitted_C=" << format_number(report.fitted_C) << "\n";
    }
    art.write("apriori.csv", apriori);
}

void run_picard(const ExperimentConfig& c, Artifacts& art, std::ostream& log) {
    for (double alpha : c.alpha) {
        const auto grid = make_grid(c.n_modes, c.box_length);
        const auto u0 = initial_field(c, grid);
        PicardOptions po;
        po.dt = c.dt;
        po.tol = c.tol;
        po.max_iter = c.max_iter;
        const auto result = picard_solve(u0, c.T, alpha, po);
        SolverOptions so;
        so.scheme = parse_scheme(c.scheme);
        const auto reference = solve_reference(u0, c.T, c.dt, alpha, so);
        const double gap = sup_l2_gap(result.solution, reference, c.T);
        const auto& h = result.history;
        std::string csv = "iteration,gap\n";
        for (std::size_t i = 0; i < h.iterate_differences.size(); ++i)
            csv += std::to_string(i + 1) + "," + format_number(h.iterate_differences[i]) + "\n";
        art.write("picard_history_" + tag(alpha) + ".csv", csv);
        nlohmann::json j{{"alpha", alpha},
                         {"T", c.T},
                         {"dt", c.dt},
                         {"converged", h.converged},
                         {"iterations", h.iterations},
                         {"iterate_differences", h.iterate_differences},
                         {"contraction_factor", h.iterate_differences.size() > 2 ? h.contraction_factor(1) : 0.0},
                         {"reference_gap", gap}};
        art.write("picard_" + tag(alpha) + ".json", j.dump(2) + "\n");
        log << "picard alpha=" << format_number(alpha) << " iterations=" << h.iterations
            << " converged=" << (h.converged ? "yes" : "no") << " reference_gap=" << format_number(gap) << "\n";
    }
}

void run_resonance(const ExperimentConfig& c, Artifacts& art, std::ostream& log) {
    ResonanceSampler sampler;
    sampler.samples = c.samples;
    std::string csv = ratio_csv_header() + "\n";
    for (double alpha : c.alpha) {
        const auto r = resonance_infimum(alpha, sampler, c.seed);
        art.write("resonance_" + tag(alpha) + ".json", to_json(r).dump(2) + "\n");
        csv += ratio_csv_row(r) + "\n";
        log << "resonance alpha=" << format_number(alpha) << " inf_ratio=" << format_number(r.ratio) << "\n";
    }
    art.write("ratio_summary.csv", csv);
}

void run_estimate(const ExperimentConfig& c, Artifacts& art, std::ostream& log) {
    const auto kind = parse_estimate_kind(c.kind);
    const auto rc = ratio_config(c);
    std::string csv = ratio_csv_header() + "\n";
    for (double alpha : c.alpha) {
        std::vector<std::optional<double>> s_values;
        for (double s : c.s) s_values.push_back(s);
        if (s_values.empty()) s_values.push_back(std::nullopt);
        for (std::size_t i = 0; i < s_values.size(); ++i) {
            EstimateParams p;
            try {
                p = params_for(c, alpha, s_values[i], true);
                p.validate();
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
            const auto r = estimate_ratio(kind, rc, p, c.seed);
            std::string name = c.kind + "_" + tag(alpha);
            if (s_values.size() > 1) name += "_s" + format_number(p.s);
            art.write(name + ".json", to_json(r).dump(2) + "\n");
            csv += ratio_csv_row(r) + "\n";
            log << c.kind << " alpha=" << format_number(alpha) << " s=" << format_number(p.s)
                << (r.infimum ? " inf_ratio=" : " sup_ratio=") << format_number(r.ratio)
                << " variation=" << format_number(r.refinement_variation()) << "\n";
        }
    }
    art.write("ratio_summary.csv", csv);
}

void run_sweep(const ExperimentConfig& c, Artifacts& art, std::ostream& log) {
    auto rc = ratio_config(c);
    rc.record_terms = false;
    std::string table = "alpha,s,s_threshold,admissible";
    if (rc.resolutions.empty()) rc.resolutions = default_resolutions(EstimateKind::main_bilinear);
    for (auto n : rc.resolutions) table += ",ratio_" + std::to_string(n);
    table += ",growth\n";
    std::string csv = ratio_csv_header() + "\n";
    for (double alpha : c.alpha) {
        const double thr = EstimateParams::s_threshold(alpha);
        std::vector<double> s_values = c.s;
        if (s_values.empty())
            for (double d : {-0.2, -0.1, -0.05, 0.05, 0.1, 0.2}) s_values.push_back(thr + d);
        for (double s : s_values) {
            const double cap = 0.25 * (alpha - 1.0);
            const double eps = std::clamp(s - thr, 0.04 * cap, cap);
            auto p = EstimateParams::admissible_defaults(alpha, eps);
            p.s = s;
            if (c.b_prime) p.b_prime = *c.b_prime;
            if (c.b) p.b = *c.b;
            p.enforce_admissible = false;
            const auto r = estimate_ratio(EstimateKind::main_bilinear, rc, p, c.seed);
            csv += ratio_csv_row(r) + "\n";
            table += format_number(alpha) + "," + format_number(s) + "," + format_number(thr) + "," +
                     (s > thr ? "1" : "0");
            for (const auto& pt : r.refinement_trend) table += "," + format_number(pt.ratio);
            const double growth = r.refinement_trend.back().ratio / r.refinement_trend.front().ratio;
            table += "," + format_number(growth) + "\n";
            log << "sweep alpha=" << format_number(alpha) << " s=" << format_number(s)
                << " sup_ratio=" << format_number(r.ratio) << " growth=" << format_number(growth) << "\n";
        }
    }
    art.write("threshold_table.csv", table);
    art.write("ratio_summary.csv", csv);
}

} // namespace

std::optional<ExperimentConfig> parse_arguments(int argc, const char* const* argv, std::ostream& out) {
    CLI::App app{"Pseudospectral lab for the fractional Benjamin-Ono equation", "fbo_lab"};
    RawOptions raw;
    add_options(app, raw);
    app.set_config("--config", "", "Flat key = value configuration file");
    app.allow_config_extras(CLI::config_extras_mode::capture);
    app.require_subcommand(1, 1);
    std::vector<CLI::App*> subs;
    subs.push_back(app.add_subcommand("simulate", "Reference solve with conservation diagnostics"));
    subs.push_back(app.add_subcommand("picard", "Picard iteration of the Duhamel map, checked against the solver"));
    subs.push_back(app.add_subcommand("verify-resonance", "Resonance lower-bound scan over the alpha list"));
    subs.push_back(app.add_subcommand("verify-estimate", "Ratio test for one estimate kind"));
    subs.push_back(app.add_subcommand("sweep", "Main bilinear ratio over an (alpha, s) grid"));
    for (auto* s : subs) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }
    // Captured config extras come back as remaining arguments.
    const auto extras = app.remaining();
    if (!extras.empty()) {
        std::string keys;
        for (const auto& x : extras) keys += (keys.empty() ? "" : ", ") + x;
        throw ConfigError("unknown configuration keys: " + keys);
    }
    std::string sub;
    for (auto* s : subs)
        if (s->parsed()) sub = s->get_name();
    return materialize(sub, raw);
}

std::string echo_config(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "# subcommand: " << c.subcommand << "\n";
    os << "alpha = " << list_text(c.alpha) << "\n";
    if (c.s.empty())
        os << "s = \"auto\"\n";
    else
        os << "s = " << list_text(c.s) << "\n";
    os << "b = " << opt_text(c.b) << "\n";
    os << "b-prime = " << opt_text(c.b_prime) << "\n";
    os << "epsilon = " << opt_text(c.epsilon) << "\n";
    os << "n-modes = " << c.n_modes << "\n";
    os << "box-length = " << format_number(c.box_length) << "\n";
    os << "t-span = " << format_number(c.t_span) << "\n";
    os << "dt = " << format_number(c.dt) << "\n";
    os << "samples = " << c.samples << "\n";
    os << "seed = " << c.seed << "\n";
    os << "out = \"" << c.out << "\"\n";
    os << "kind = \"" << c.kind << "\"\n";
    if (!c.resolutions.empty()) {
        os << "resolutions = [";
        for (std::size_t i = 0; i < c.resolutions.size(); ++i) os << (i ? ", " : "") << c.resolutions[i];
        os << "]\n";
    }
    os << "family = \"" << c.family << "\"\n";
    os << "amplitude = " << format_number(c.amplitude) << "\n";
    os << "width = " << format_number(c.width) << "\n";
    os << "l2-norm = " << format_number(c.l2_norm) << "\n";
    os << "zero-mean = " << (c.zero_mean ? "true" : "false") << "\n";
    os << "T = " << format_number(c.T) << "\n";
    os << "tol = " << format_number(c.tol) << "\n";
    os << "max-iter = " << c.max_iter << "\n";
    os << "scheme = \"" << c.scheme << "\"\n";
    os << "stride = " << c.stride << "\n";
    return os.str();
}

int run(const ExperimentConfig& c, std::ostream& log) {
    try {
        if (std::find(kSubcommands.begin(), kSubcommands.end(), c.subcommand) == kSubcommands.end())
            throw ConfigError("unknown subcommand '" + c.subcommand + "'");
        Artifacts art{c.out, {}};
        std::error_code ec;
        fs::create_directories(art.dir, ec);
        if (ec || !fs::is_directory(art.dir))
            throw std::runtime_error("cannot create output directory '" + c.out + "'");
        art.write("config.ini", echo_config(c));

        if (c.subcommand == "simulate") run_simulate(c, art, log);
        if (c.subcommand == "picard") run_picard(c, art, log);
        if (c.subcommand == "verify-resonance") run_resonance(c, art, log);
        if (c.subcommand == "verify-estimate") run_estimate(c, art, log);
        if (c.subcommand == "sweep") run_sweep(c, art, log);

        nlohmann::json manifest{{"subcommand", c.subcommand},
                                {"seed", c.seed},
                                {"config", "config.ini"},
                                {"files", art.files},
                                {"simd", simd::isa_name(simd::active_isa())}};
        write_text_file(art.dir / "manifest.json", manifest.dump(2) + "\n");
        return kExitOk;
    } catch (const BlowUpError& e) {
        log << "error: " << e.what() << "\n";
        return kExitBlowUp;
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        log << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        log << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int run_cli(int argc, const char* const* argv) {
    std::optional<ExperimentConfig> config;
    try {
        config = parse_arguments(argc, argv, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    if (!config) return kExitOk;
    return run(*config, std::cerr);
}

} // namespace fbo
