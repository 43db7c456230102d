#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "gbc/entropy_mi.hpp"
#include "gbc/report_io.hpp"

namespace gbc::cli {

struct RunConfig {
  std::optional<double> snr1_db;  // command-specific default when unset
  std::optional<double> snr2_db;
  std::size_t alpha_grid_size = 64;
  std::size_t lambda_grid_size = 16;
  std::optional<MiMethod> mi_method;
  int quad_order = 96;
  std::size_t mc_samples = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path out_dir = ".";
  io::OutputFormat format = io::OutputFormat::csv;

  MiOptions mi_options(MiMethod fallback) const;
  ChannelParams channel(double default_snr1_db, double default_snr2_db) const;
  /// Throws std::invalid_argument on grid sizes below two or non-positive precision settings.
  void validate() const;
};

struct ScanRanges {
  double snr1_lo_db = 6.0;
  double snr1_hi_db = 40.0;
  double snr2_lo_db = 4.0;
  double step_db = 1.0;
  std::size_t boundary_grid_size = 128;
  double bound_scale = 1.0;  // test hook: scales every certified threshold
};

struct Fig5Row {
  double alpha = 0.0;
  double c2 = 0.0;
  double mi_52 = 0.0;
  double mi_42 = 0.0;
  double mi_33 = 0.0;
  double err_est = 0.0;  // largest of the three MI error estimates
};

std::vector<Fig5Row> fig5_rows(const ChannelParams& ch, std::span<const double> alphas, const MiOptions& options);
io::CsvTable fig5_table(std::span<const Fig5Row> rows);

/// rate_points, frontier and capacity files at (22, 12) dB unless overridden.
int cmd_region(const RunConfig& config, std::ostream& log);

/// gap_report, ts_report and theorem1_report files; returns 0 iff every check passes.
int cmd_gap_scan(const RunConfig& config, const ScanRanges& ranges, std::ostream& log);

/// fig5 file at (20, 10) dB unless overridden.
int cmd_fig5(const RunConfig& config, std::ostream& log);

int cmd_constants(std::ostream& out);

struct MiQuery {
  int user = 2;
  int m1 = 2;
  int m2 = 2;
  double alpha = 0.2;
};

int cmd_mi(const RunConfig& config, const MiQuery& query, std::ostream& out);

}  // namespace gbc::cli
