#include "gbc/commands.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <stdexcept>

#include "gbc/capacity.hpp"
#include "gbc/gap.hpp"
#include "gbc/parallel.hpp"
#include "gbc/region.hpp"

namespace gbc::cli {

MiOptions RunConfig::mi_options(MiMethod fallback) const {
  MiOptions o;
  o.method = mi_method.value_or(fallback);
  o.quad_order = quad_order;
  o.mc_samples = mc_samples;
  o.seed = seed;
  return o;
}

ChannelParams RunConfig::channel(double default_snr1_db, double default_snr2_db) const {
  return ChannelParams::from_db(snr1_db.value_or(default_snr1_db), snr2_db.value_or(default_snr2_db));
}

void RunConfig::validate() const {
  if (alpha_grid_size < 2 || lambda_grid_size < 2) {
    throw std::invalid_argument("grid sizes must be >= 2");
  }
  if (quad_order < 2) {
    throw std::invalid_argument("quadrature order must be >= 2");
  }
  if (mc_samples < 2) {
    throw std::invalid_argument("Monte Carlo sample count must be >= 2");
  }
}

std::vector<Fig5Row> fig5_rows(const ChannelParams& ch, std::span<const double> alphas, const MiOptions& options) {
  if (options.method == MiMethod::closed_form_lb) {
    throw std::invalid_argument("fig5 needs an exact MI method (quad or mc)");
  }
  return parallel_map(alphas.size(), [&](std::size_t i) {
    const double a = alphas[i];
    Fig5Row row;
    row.alpha = a;
    row.c2 = c2(a, ch.snr2);
    auto eval = [&](int m1, int m2) {
      MiOptions o = options;
      o.seed = derive_seed(options.seed, static_cast<std::uint64_t>(i) << 16 | static_cast<std::uint64_t>(m1 * 16 + m2));
      const auto est = mi_exact_tin(User::two, ch, a, m1, m2, o);
      row.err_est = std::max(row.err_est, est.err_est);
      return est.value;
    };
    row.mi_52 = eval(5, 2);
    row.mi_42 = eval(4, 2);
    row.mi_33 = eval(3, 3);
    return row;
  });
}

io::CsvTable fig5_table(std::span<const Fig5Row> rows) {
  io::CsvTable t;
  t.header = {"alpha", "c2", "mi_52", "mi_42", "mi_33"};
  for (const auto& r : rows) {
    t.rows.push_back({io::format_double(r.alpha), io::format_double(r.c2), io::format_double(r.mi_52),
                      io::format_double(r.mi_42), io::format_double(r.mi_33)});
  }
  return t;
}

int cmd_region(const RunConfig& config, std::ostream& log) {
  config.validate();
  const auto ch = config.channel(22.0, 12.0);
  const auto options = config.mi_options(MiMethod::quadrature);

  const auto region = build_achievable_region(ch, config.alpha_grid_size, options);
  const auto ts_points = ts_edge_samples(region.ts, config.lambda_grid_size);

  std::vector<RatePoint> rate_points = region.sweep.generators;
  rate_points.insert(rate_points.end(), ts_points.begin(), ts_points.end());

  std::vector<RatePoint> candidates = rate_points;
  candidates.insert(candidates.end(), region.ts.frontier.begin(), region.ts.frontier.end());
  const auto frontier = pareto_frontier(candidates);

  const auto capacity = capacity_boundary(ch, uniform_alpha_grid(config.alpha_grid_size));

  const auto p1 = io::write_table(config.out_dir, "rate_points", io::rate_points_table(rate_points), config.format);
  const auto p2 = io::write_table(config.out_dir, "frontier", io::rate_points_table(frontier), config.format);
  const auto p3 = io::write_table(config.out_dir, "capacity", io::capacity_table(capacity), config.format);
  log << "region at (" << ch.snr1_db << ", " << ch.snr2_db << ") dB: n1=" << ch.n1 << " n2=" << ch.n2 << ", "
      << rate_points.size() << " rate points, " << frontier.size() << " frontier points\n"
      << "wrote " << p1.string() << ", " << p2.string() << ", " << p3.string() << "\n";
  return 0;
}

int cmd_gap_scan(const RunConfig& config, const ScanRanges& ranges, std::ostream& log) {
  config.validate();
  if (!(ranges.bound_scale > 0.0)) {
    throw std::invalid_argument("bound scale must be positive");
  }
  const auto options = config.mi_options(MiMethod::closed_form_lb);
  const auto bounds = GapBounds{}.scaled(ranges.bound_scale);
  const auto grid = snr_scan(ranges.snr1_lo_db, ranges.snr1_hi_db, ranges.snr2_lo_db, ranges.step_db);
  if (grid.empty()) {
    log << "warning: SNR ranges do not intersect; writing empty reports\n";
  }

  auto reports = certify_case1(grid, options, bounds);
  const auto case2 = certify_case2(grid, config.alpha_grid_size, options, bounds);
  reports.insert(reports.end(), case2.begin(), case2.end());

  struct PerChannel {
    std::vector<TsGapReport> ts;
    Theorem1Summary theorem;
  };
  const auto per_channel = parallel_map(grid.size(), [&](std::size_t i) {
    const auto ch = ChannelParams::from_db(grid[i].snr1_db, grid[i].snr2_db);
    PerChannel out;
    out.ts = certify_ts(ch, config.lambda_grid_size, options, bounds);
    out.theorem = certify_theorem1(ch, ranges.boundary_grid_size, config.alpha_grid_size, options, bounds);
    return out;
  });
  std::vector<TsGapReport> ts_reports;
  std::vector<Theorem1Summary> theorem;
  for (const auto& pc : per_channel) {
    ts_reports.insert(ts_reports.end(), pc.ts.begin(), pc.ts.end());
    theorem.push_back(pc.theorem);
  }

  std::size_t failures = 0;
  for (const auto& r : reports) failures += r.pass ? 0 : 1;
  for (const auto& r : ts_reports) failures += r.pass ? 0 : 1;
  for (const auto& s : theorem) failures += s.pass ? 0 : 1;

  io::write_table(config.out_dir, "gap_report", io::gap_report_table(reports, ts_reports, bounds), config.format);
  io::write_table(config.out_dir, "ts_report", io::ts_report_table(ts_reports), config.format);
  io::write_table(config.out_dir, "theorem1_report", io::theorem1_table(theorem), config.format);

  log << "gap scan: " << grid.size() << " SNR pairs, " << reports.size() << " point reports, " << ts_reports.size()
      << " time-sharing segments, " << failures << " violations\n";
  return failures == 0 ? 0 : 1;
}

int cmd_fig5(const RunConfig& config, std::ostream& log) {
  config.validate();
  const auto ch = config.channel(20.0, 10.0);
  const auto options = config.mi_options(MiMethod::quadrature);
  const auto alphas = uniform_alpha_grid(config.alpha_grid_size);
  const auto rows = fig5_rows(ch, alphas, options);
  const auto path = io::write_table(config.out_dir, "fig5", fig5_table(rows), config.format);

  std::size_t above = 0;
  for (const auto& r : rows) above += r.mi_33 > r.c2 + r.err_est ? 1 : 0;
  log << "fig5 at (" << ch.snr1_db << ", " << ch.snr2_db << ") dB: " << rows.size() << " rows, " << above
      << " with I(X2;Y2) for (3,3) above C2; wrote " << path.string() << "\n";
  return 0;
}

int cmd_constants(std::ostream& out) {
  bool ok = true;
  out << std::left << std::setw(22) << "name" << std::right << std::setw(12) << "recomputed" << std::setw(10)
      << "quoted" << std::setw(12) << "|diff|" << "\n";
  for (const auto& c : paper_constants()) {
    const double diff = std::abs(c.value - c.quoted);
    ok = ok && diff <= 1e-3;
    char value[32];
    char quoted[32];
    char d[32];
    std::snprintf(value, sizeof value, "%.6f", c.value);
    std::snprintf(quoted, sizeof quoted, "%.3f", c.quoted);
    std::snprintf(d, sizeof d, "%.6f", diff);
    out << std::left << std::setw(22) << c.name << std::right << std::setw(12) << value << std::setw(10) << quoted
        << std::setw(12) << d << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_mi(const RunConfig& config, const MiQuery& q, std::ostream& out) {
  config.validate();
  if (q.user != 1 && q.user != 2) {
    throw std::invalid_argument("user must be 1 or 2");
  }
  const auto ch = config.channel(22.0, 12.0);
  const auto options = config.mi_options(MiMethod::quadrature);
  const User user = q.user == 1 ? User::one : User::two;
  const OrderPair order{q.m1, q.m2};

  double value = 0.0;
  double err = 0.0;
  if (options.method == MiMethod::closed_form_lb) {
    value = closed_form_rate(user, ch, q.alpha, order);
  } else {
    const auto est = mi_exact_tin(user, ch, q.alpha, q.m1, q.m2, options);
    value = est.value;
    err = est.err_est;
  }
  const double cap = user == User::one ? c1(q.alpha, ch.snr1) : c2(q.alpha, ch.snr2);
  out << "user=" << q.user << " m1=" << q.m1 << " m2=" << q.m2 << " alpha=" << io::format_double(q.alpha)
      << " snr1_db=" << io::format_double(ch.snr1_db) << " snr2_db=" << io::format_double(ch.snr2_db) << "\n"
      << "method=" << to_string(options.method) << " mi=" << io::format_double(value)
      << " err_est=" << io::format_double(err) << " capacity=" << io::format_double(cap)
      << " gap=" << io::format_double(cap - value) << "\n";
  return 0;
}

}  // namespace gbc::cli
