#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gbc/capacity.hpp"
#include "gbc/gap.hpp"
#include "gbc/region.hpp"

namespace gbc::io {

enum class OutputFormat { csv, json };

OutputFormat parse_output_format(std::string_view name);

/// 17 significant digits, printf("%.17g"); parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);

/// Comma-separated table without quoting (no field ever contains a comma).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(std::string_view text);
std::string to_csv(const CsvTable& table);
/// Array of objects keyed by header; numeric fields become numbers, empty fields null.
std::string to_json(const CsvTable& table);

/// Writes `stem`.csv or `stem`.json into `dir`; throws std::runtime_error naming the path on failure.
std::filesystem::path write_table(const std::filesystem::path& dir, std::string_view stem, const CsvTable& table,
                                  OutputFormat format);

// scheme,m1,m2,alpha,ts_lambda,r1,r2,method,err_est
CsvTable rate_points_table(std::span<const RatePoint> points);
std::vector<RatePoint> rate_points_from_table(const CsvTable& table);

// alpha,c1,c2
CsvTable capacity_table(std::span<const CapacityPoint> points);

// snr1_db,snr2_db,case_tag,m1,m2,alpha,delta1,delta2,bound1,bound2,pass
CsvTable gap_report_table(std::span<const GapReport> reports, std::span<const TsGapReport> ts_reports,
                          const GapBounds& bounds);
std::vector<GapReport> gap_reports_from_table(const CsvTable& table);

// snr1_db,snr2_db,m1a,m2a,m1b,m2b,corner,max_c_gap1,max_c_gap2,max_total_gap1,max_total_gap2,pass
CsvTable ts_report_table(std::span<const TsGapReport> reports);

// snr1_db,snr2_db,samples,worst_gap1,worst_gap2,worst_uniform_gap,pass
CsvTable theorem1_table(std::span<const Theorem1Summary> summaries);

}  // namespace gbc::io
