#include "gbc/report_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace gbc::io {

namespace {

std::string format_int(long v) { return std::to_string(v); }

std::string format_bool(bool v) { return v ? "true" : "false"; }

bool parse_bool(std::string_view s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("expected true/false, got '" + std::string(s) + "'");
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("expected integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::size_t column(const CsvTable& table, std::string_view name) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == name) return i;
  }
  throw std::invalid_argument("missing column '" + std::string(name) + "'");
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format '" + std::string(name) + "'");
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double parse_double(std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("expected number, got '" + std::string(text) + "'");
  }
  return v;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  bool first = true;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != table.header.size()) {
        throw std::invalid_argument("csv row has " + std::to_string(fields.size()) + " fields, header has " +
                                    std::to_string(table.header.size()));
      }
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  auto append_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  };
  append_row(table.header);
  for (const auto& row : table.rows) append_row(row);
  return out;
}

std::string to_json(const CsvTable& table) {
  auto records = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& field = row[i];
      if (field.empty()) {
        rec[table.header[i]] = nullptr;
      } else if (field == "true" || field == "false") {
        rec[table.header[i]] = field == "true";
      } else {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec == std::errc() && ptr == field.data() + field.size() && std::isfinite(v)) {
          rec[table.header[i]] = v;
        } else {
          rec[table.header[i]] = field;
        }
      }
    }
    records.push_back(std::move(rec));
  }
  return records.dump(2) + "\n";
}

std::filesystem::path write_table(const std::filesystem::path& dir, std::string_view stem, const CsvTable& table,
                                  OutputFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto path = dir / (std::string(stem) + (format == OutputFormat::csv ? ".csv" : ".json"));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << (format == OutputFormat::csv ? to_csv(table) : to_json(table));
  out.close();
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
  return path;
}

CsvTable rate_points_table(std::span<const RatePoint> points) {
  CsvTable t;
  t.header = {"scheme", "m1", "m2", "alpha", "ts_lambda", "r1", "r2", "method", "err_est"};
  for (const auto& p : points) {
    const bool ts = p.scheme == RateScheme::ts_combination;
    t.rows.push_back({
        std::string(to_string(p.scheme)),
        ts ? "" : format_int(p.m1),
        ts ? "" : format_int(p.m2),
        ts ? "" : format_double(p.alpha),
        p.ts_lambda ? format_double(*p.ts_lambda) : "",
        format_double(p.r1),
        format_double(p.r2),
        std::string(to_string(p.method)),
        format_double(p.err_est),
    });
  }
  return t;
}

std::vector<RatePoint> rate_points_from_table(const CsvTable& table) {
  const auto c_scheme = column(table, "scheme");
  const auto c_m1 = column(table, "m1");
  const auto c_m2 = column(table, "m2");
  const auto c_alpha = column(table, "alpha");
  const auto c_lambda = column(table, "ts_lambda");
  const auto c_r1 = column(table, "r1");
  const auto c_r2 = column(table, "r2");
  const auto c_method = column(table, "method");
  const auto c_err = column(table, "err_est");

  std::vector<RatePoint> out;
  for (const auto& row : table.rows) {
    RatePoint p;
    p.scheme = parse_rate_scheme(row[c_scheme]);
    const bool ts = p.scheme == RateScheme::ts_combination;
    p.m1 = ts ? 0 : parse_int(row[c_m1]);
    p.m2 = ts ? 0 : parse_int(row[c_m2]);
    p.alpha = ts ? std::numeric_limits<double>::quiet_NaN() : parse_double(row[c_alpha]);
    if (!row[c_lambda].empty()) p.ts_lambda = parse_double(row[c_lambda]);
    p.r1 = parse_double(row[c_r1]);
    p.r2 = parse_double(row[c_r2]);
    p.method = parse_mi_method(row[c_method]);
    p.err_est = parse_double(row[c_err]);
    out.push_back(p);
  }
  return out;
}

CsvTable capacity_table(std::span<const CapacityPoint> points) {
  CsvTable t;
  t.header = {"alpha", "c1", "c2"};
  for (const auto& p : points) {
    t.rows.push_back({format_double(p.alpha), format_double(p.c1), format_double(p.c2)});
  }
  return t;
}

CsvTable gap_report_table(std::span<const GapReport> reports, std::span<const TsGapReport> ts_reports,
                          const GapBounds& bounds) {
  CsvTable t;
  t.header = {"snr1_db", "snr2_db", "case_tag", "m1", "m2", "alpha", "delta1", "delta2", "bound1", "bound2", "pass"};
  for (const auto& r : reports) {
    t.rows.push_back({format_double(r.ch.snr1_db), format_double(r.ch.snr2_db), std::string(to_string(r.case_tag)),
                      format_int(r.m1), format_int(r.m2), format_double(r.alpha), format_double(r.delta1),
                      format_double(r.delta2), format_double(r.bound1), format_double(r.bound2),
                      format_bool(r.pass)});
  }
  for (const auto& r : ts_reports) {
    t.rows.push_back({format_double(r.ch.snr1_db), format_double(r.ch.snr2_db),
                      std::string(to_string(CaseTag::ts_segment)), format_int(r.pair.a.m1), format_int(r.pair.a.m2),
                      format_double(r.alpha_a), format_double(r.max_total_gap1), format_double(r.max_total_gap2),
                      format_double(bounds.ts_total_user1), format_double(bounds.ts_total_user2),
                      format_bool(r.pass)});
  }
  return t;
}

std::vector<GapReport> gap_reports_from_table(const CsvTable& table) {
  const auto c_s1 = column(table, "snr1_db");
  const auto c_s2 = column(table, "snr2_db");
  const auto c_tag = column(table, "case_tag");
  const auto c_m1 = column(table, "m1");
  const auto c_m2 = column(table, "m2");
  const auto c_alpha = column(table, "alpha");
  const auto c_d1 = column(table, "delta1");
  const auto c_d2 = column(table, "delta2");
  const auto c_b1 = column(table, "bound1");
  const auto c_b2 = column(table, "bound2");
  const auto c_pass = column(table, "pass");

  std::vector<GapReport> out;
  for (const auto& row : table.rows) {
    GapReport r;
    r.ch = ChannelParams::from_db(parse_double(row[c_s1]), parse_double(row[c_s2]));
    r.case_tag = parse_case_tag(row[c_tag]);
    r.m1 = parse_int(row[c_m1]);
    r.m2 = parse_int(row[c_m2]);
    r.alpha = parse_double(row[c_alpha]);
    r.delta1 = parse_double(row[c_d1]);
    r.delta2 = parse_double(row[c_d2]);
    r.bound1 = parse_double(row[c_b1]);
    r.bound2 = parse_double(row[c_b2]);
    r.pass = parse_bool(row[c_pass]);
    out.push_back(r);
  }
  return out;
}

CsvTable ts_report_table(std::span<const TsGapReport> reports) {
  CsvTable t;
  t.header = {"snr1_db",    "snr2_db",    "m1a",           "m2a",           "m1b",  "m2b", "corner",
              "max_c_gap1", "max_c_gap2", "max_total_gap1", "max_total_gap2", "pass"};
  for (const auto& r : reports) {
    t.rows.push_back({format_double(r.ch.snr1_db), format_double(r.ch.snr2_db), format_int(r.pair.a.m1),
                      format_int(r.pair.a.m2), format_int(r.pair.b.m1), format_int(r.pair.b.m2),
                      format_bool(r.corner_segment), format_double(r.max_c_gap1), format_double(r.max_c_gap2),
                      format_double(r.max_total_gap1), format_double(r.max_total_gap2), format_bool(r.pass)});
  }
  return t;
}

CsvTable theorem1_table(std::span<const Theorem1Summary> summaries) {
  CsvTable t;
  t.header = {"snr1_db", "snr2_db", "samples", "worst_gap1", "worst_gap2", "worst_uniform_gap", "pass"};
  for (const auto& s : summaries) {
    t.rows.push_back({format_double(s.ch.snr1_db), format_double(s.ch.snr2_db),
                      format_int(static_cast<long>(s.samples)), format_double(s.worst_gap1),
                      format_double(s.worst_gap2), format_double(s.worst_uniform_gap), format_bool(s.pass)});
  }
  return t;
}

}  // namespace gbc::io
