#pragma once

// Artifact formats: trajectory CSV and binary dumps, ratio reports as JSON
// and CSV rows, a priori summary rows.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "fbo/conservation.hpp"
#include "fbo/estimates.hpp"
#include "fbo/trajectory.hpp"

#include "json.hpp"

namespace fbo {

// Shortest round-trip decimal form of a double.
std::string format_number(double v);

// t, then abs/arg for every retained mode |k| <= (n-1)/3, every `stride`-th state.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::size_t stride = 1);

// Little-endian: "FBOT", u32 version, u32 N, f64 L, f64 dt, u32 count, then
// per state f64 t and N complex (re, im) pairs.
inline constexpr std::uint32_t kTrajectoryFormatVersion = 1;
void write_trajectory_binary(std::ostream& os, const Trajectory& traj);
Trajectory read_trajectory_binary(std::istream& is, double alpha);

nlohmann::json to_json(const EstimateParams& p);
nlohmann::json to_json(const RatioReport& r);

std::string ratio_csv_header();
// kind, alpha, s, b, b_prime, sup_or_inf, n_samples, resolution, seed
std::string ratio_csv_row(const RatioReport& r);

std::string apriori_csv_header();
// run_id, alpha, omega, T, initial_norm, sup_norm, fitted_C, l2_drift
std::string apriori_csv_row(const std::string& run_id, const AprioriReport& r);

// Writes text to a file, creating parent directories; throws on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace fbo
