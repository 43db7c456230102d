#include "gbc/gap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gbc/capacity.hpp"
#include "gbc/parallel.hpp"

namespace gbc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double half_log2(double x) { return 0.5 * std::log2(x); }

// Alpha of the time-sharing generator of an order pair: alpha* or, for m2 = 1, the corner.
double generator_alpha(OrderPair order) {
  if (order.m2 == 1 || order.m1 * order.m2 < 2) {
    return 1.0;
  }
  return alpha_star(order.m1, order.m2);
}

std::pair<double, double> rates_at(const ChannelParams& ch, OrderPair order, double alpha,
                                   const MiOptions& options, double& err_est) {
  const auto p = rate_point(ch, order, alpha, options);
  err_est = p.err_est;
  return {p.r1, p.r2};
}

template <typename T>
std::vector<T> flatten(std::vector<std::vector<T>> nested) {
  std::vector<T> out;
  for (auto& v : nested) {
    out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  }
  return out;
}

}  // namespace

std::vector<PaperConstant> paper_constants() {
  const double sl = shaping_loss_bits();
  const double gap1_case1 = half_log2(1.0 + 12.0 / 5.0 + 0.25) + sl;
  const double gap2_case1 = half_log2(1.0 + 4.0 / 3.0 + 1.0 + 0.25) + sl;
  const double chord1 = half_log2(8.0 / 3.0) + half_log2(35.0 / 8.0);
  const double chord2 = half_log2(35.0 / 8.0) + half_log2(35.0 / 3.0 + 8.0 / 3.0);
  return {
      {"gap1_case1", gap1_case1, 1.188},
      {"gap2_case1", gap2_case1, 1.175},
      {"gap1_case2_small_snr", half_log2(2.0) + sl, 0.754},
      {"gap2_case2", half_log2(9.0 / 4.0) + sl, 0.839},
      {"c2_at_snr2_4", c2(0.0, 4.0), 1.161},
      {"ts_chord_user1", chord1, 1.772},
      {"ts_chord_user2", chord2, 2.985},
      {"ts_total_user1", chord1 + gap1_case1, 2.960},
      {"ts_total_user2", chord2 + gap2_case1, 4.160},
  };
}

double paper_constant(std::string_view name) {
  for (const auto& c : paper_constants()) {
    if (c.name == name) return c.value;
  }
  throw std::invalid_argument("unknown constant '" + std::string(name) + "'");
}

GapBounds GapBounds::scaled(double factor) const {
  GapBounds b = *this;
  for (double* v : {&b.case1_user1, &b.case1_user2, &b.case2_user1, &b.case2_user1_small, &b.case2_user2_high,
                    &b.case2_user2_low, &b.case2_user2_combined, &b.ts_chord_user1, &b.ts_chord_user2,
                    &b.ts_total_user1, &b.ts_total_user2}) {
    *v *= factor;
  }
  return b;
}

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::case1_alpha_star: return "case1_alpha_star";
    case CaseTag::case2_interior: return "case2_interior";
    case CaseTag::ts_segment: return "ts_segment";
    case CaseTag::single_user: return "single_user";
  }
  return "unknown";
}

CaseTag parse_case_tag(std::string_view name) {
  if (name == "case1_alpha_star") return CaseTag::case1_alpha_star;
  if (name == "case2_interior") return CaseTag::case2_interior;
  if (name == "ts_segment") return CaseTag::ts_segment;
  if (name == "single_user") return CaseTag::single_user;
  throw std::invalid_argument("unknown case tag '" + std::string(name) + "'");
}

GapReport gap_at(const ChannelParams& ch, OrderPair order, double alpha, const MiOptions& options,
                 const GapBounds& bounds) {
  GapReport r;
  r.ch = ch;
  r.m1 = order.m1;
  r.m2 = order.m2;
  r.alpha = alpha;

  const auto [rate1, rate2] = rates_at(ch, order, alpha, options, r.err_est);
  r.delta1 = c1(alpha, ch.snr1) - rate1;
  r.delta2 = c2(alpha, ch.snr2) - rate2;

  if (alpha == 0.0 || alpha == 1.0) {
    r.case_tag = CaseTag::single_user;
    r.bound1 = bounds.case1_user1;
    r.bound2 = bounds.case1_user2;
  } else {
    const double top = order.m1 >= 2 ? alpha_star(order.m1, order.m2) : 0.0;
    if (top > 0.0 && std::abs(alpha - top) <= 1e-12 * top) {
      r.case_tag = CaseTag::case1_alpha_star;
      r.bound1 = bounds.case1_user1;
      r.bound2 = bounds.case1_user2;
    } else if (alpha < top) {
      r.case_tag = CaseTag::case2_interior;
      r.bound1 = alpha * ch.snr1 > 1.0 ? bounds.case2_user1 : bounds.case2_user1_small;
      r.bound2 = ch.snr2 > 4.0 ? bounds.case2_user2_high : bounds.case2_user2_low;
      r.bound2_combined = bounds.case2_user2_combined;
    } else {
      r.case_tag = CaseTag::case2_interior;
      r.in_regime = false;
      r.bound1 = kInf;
      r.bound2 = kInf;
    }
  }
  const double slack = bounds.tol + r.err_est;
  r.pass = !r.in_regime || (r.delta1 <= r.bound1 + slack && r.delta2 <= r.bound2 + slack);
  return r;
}

std::vector<SnrPoint> snr_scan(double snr1_lo_db, double snr1_hi_db, double snr2_lo_db, double step_db) {
  if (!(step_db > 0.0)) {
    throw std::invalid_argument("snr_scan: step must be positive");
  }
  std::vector<SnrPoint> out;
  const auto n1 = static_cast<long>(std::floor((snr1_hi_db - snr1_lo_db) / step_db + 1e-9));
  for (long i = 0; i <= n1; ++i) {
    const double s1 = snr1_lo_db + static_cast<double>(i) * step_db;
    for (long j = 0;; ++j) {
      const double s2 = snr2_lo_db + static_cast<double>(j) * step_db;
      if (s2 > s1 - step_db + 1e-9) break;
      out.push_back({s1, s2});
    }
  }
  return out;
}

std::vector<GapReport> certify_case1(std::span<const SnrPoint> grid, const MiOptions& options,
                                     const GapBounds& bounds) {
  auto nested = parallel_map(grid.size(), [&](std::size_t i) {
    const auto ch = ChannelParams::from_db(grid[i].snr1_db, grid[i].snr2_db);
    std::vector<GapReport> reports;
    for (const auto& order : case1_orders(ch)) {
      auto r = gap_at(ch, order, alpha_star(order.m1, order.m2), options, bounds);
      const double prod = static_cast<double>(order.m1) * order.m2;
      const double lo = (prod - 1.0) * (prod - 1.0);
      const double hi = (prod + order.m1) * (prod + order.m1);
      const double m2_minus_1 = static_cast<double>(order.m2) - 1.0;
      if (!(ch.snr1 > lo && ch.snr1 <= hi && ch.snr2 > m2_minus_1 * m2_minus_1)) {
        r.in_regime = false;
        r.pass = true;
      }
      reports.push_back(r);
    }
    return reports;
  });
  return flatten(std::move(nested));
}

std::vector<GapReport> certify_case2(std::span<const SnrPoint> grid, std::size_t alpha_grid_size,
                                     const MiOptions& options, const GapBounds& bounds) {
  auto nested = parallel_map(grid.size(), [&](std::size_t i) {
    const auto ch = ChannelParams::from_db(grid[i].snr1_db, grid[i].snr2_db);
    std::vector<GapReport> reports;
    const OrderPair order{ch.n1 / ch.n2, ch.n2};
    if (order.m1 < 2 || order.m2 < 2) {
      return reports;
    }
    auto alphas = alpha_grid(ch, order, alpha_grid_size + 1);
    alphas.pop_back();  // alpha* itself belongs to case 1
    for (double a : alphas) {
      reports.push_back(gap_at(ch, order, a, options, bounds));
    }
    return reports;
  });
  return flatten(std::move(nested));
}

TsGapReport ts_gap(const ChannelParams& ch, const AdjacentPair& pair, std::size_t lambda_grid_size,
                   const MiOptions& options, const GapBounds& bounds) {
  if (lambda_grid_size < 2) {
    throw std::invalid_argument("ts_gap: lambda grid needs at least two points");
  }
  TsGapReport r;
  r.ch = ch;
  r.pair = pair;
  r.corner_segment = pair.b.m2 == 1;
  r.alpha_a = generator_alpha(pair.a);
  r.alpha_b = generator_alpha(pair.b);

  double err_a = 0.0;
  double err_b = 0.0;
  const auto [ra1, ra2] = rates_at(ch, pair.a, r.alpha_a, options, err_a);
  const auto [rb1, rb2] = rates_at(ch, pair.b, r.alpha_b, options, err_b);
  r.err_est = std::max(err_a, err_b);

  const double ca1 = c1(r.alpha_a, ch.snr1);
  const double ca2 = c2(r.alpha_a, ch.snr2);
  const double cb1 = c1(r.alpha_b, ch.snr1);
  const double cb2 = c2(r.alpha_b, ch.snr2);
  r.endpoint_delta1 = std::max(ca1 - ra1, cb1 - rb1);
  r.endpoint_delta2 = std::max(ca2 - ra2, cb2 - rb2);

  r.lambda_grid = uniform_alpha_grid(lambda_grid_size);
  const double lo = std::min(r.alpha_a, r.alpha_b);
  const double hi = std::max(r.alpha_a, r.alpha_b);
  std::vector<CapacityPoint> arc;
  for (std::size_t j = 0; j < lambda_grid_size; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(lambda_grid_size - 1);
    const double a = j + 1 == lambda_grid_size ? hi : lo + t * (hi - lo);
    arc.push_back({a, c1(a, ch.snr1), c2(a, ch.snr2)});
  }

  r.max_c_gap1 = r.max_c_gap2 = -kInf;
  r.max_total_gap1 = r.max_total_gap2 = -kInf;
  for (double lambda : r.lambda_grid) {
    const double cl1 = lambda * ca1 + (1.0 - lambda) * cb1;
    const double cl2 = lambda * ca2 + (1.0 - lambda) * cb2;
    const double rl1 = lambda * ra1 + (1.0 - lambda) * rb1;
    const double rl2 = lambda * ra2 + (1.0 - lambda) * rb2;
    r.point_gap1.push_back(cl1 - rl1);
    r.point_gap2.push_back(cl2 - rl2);
    for (const auto& c : arc) {
      r.max_c_gap1 = std::max(r.max_c_gap1, c.c1 - cl1);
      r.max_c_gap2 = std::max(r.max_c_gap2, c.c2 - cl2);
      r.max_total_gap1 = std::max(r.max_total_gap1, c.c1 - rl1);
      r.max_total_gap2 = std::max(r.max_total_gap2, c.c2 - rl2);
    }
  }

  const double slack = bounds.tol + r.err_est;
  r.pass = r.max_total_gap1 <= bounds.ts_total_user1 + slack && r.max_total_gap2 <= bounds.ts_total_user2 + slack;
  if (!r.corner_segment) {
    r.pass = r.pass && r.max_c_gap1 <= bounds.ts_chord_user1 + bounds.tol &&
             r.max_c_gap2 <= bounds.ts_chord_user2 + bounds.tol;
  }
  return r;
}

std::vector<TsGapReport> certify_ts(const ChannelParams& ch, std::size_t lambda_grid_size, const MiOptions& options,
                                    const GapBounds& bounds) {
  auto pairs = adjacent_ts_pairs(ch);
  const auto orders = case1_orders(ch);
  if (!orders.empty()) {
    pairs.push_back({orders.back(), OrderPair{ch.n1, 1}});
  }
  return parallel_map(pairs.size(),
                      [&](std::size_t i) { return ts_gap(ch, pairs[i], lambda_grid_size, options, bounds); });
}

Theorem1Summary certify_theorem1(const ChannelParams& ch, const AchievableRegion& region,
                                 std::size_t boundary_grid_size, const GapBounds& bounds) {
  double err = 0.0;
  for (const auto* part : {&region.sweep, &region.ts}) {
    for (const auto& p : part->generators) err = std::max(err, p.err_est);
  }
  const double tol = bounds.tol + err;

  Theorem1Summary s;
  s.ch = ch;
  const auto grid = uniform_alpha_grid(boundary_grid_size);
  const auto boundary = capacity_boundary(ch, grid);
  s.samples = boundary.size();
  for (const auto& c : boundary) {
    if (!region.contains(c.c1 - bounds.ts_total_user1, c.c2 - bounds.ts_total_user2, tol)) {
      s.pass = false;
    }
    // Smallest uniform shift that lands inside the region; the region is downward closed.
    double lo = 0.0;
    double hi = std::max(c.c1, c.c2);
    if (region.contains(c.c1, c.c2, tol)) {
      hi = 0.0;
    } else {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (region.contains(c.c1 - mid, c.c2 - mid, tol)) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
    }
    s.worst_uniform_gap = std::max(s.worst_uniform_gap, hi);
    s.worst_gap1 = std::max(s.worst_gap1, std::min(hi, c.c1));
    s.worst_gap2 = std::max(s.worst_gap2, std::min(hi, c.c2));
  }
  return s;
}

Theorem1Summary certify_theorem1(const ChannelParams& ch, std::size_t boundary_grid_size,
                                 std::size_t alpha_grid_size, const MiOptions& options, const GapBounds& bounds) {
  const auto region = build_achievable_region(ch, alpha_grid_size, options);
  return certify_theorem1(ch, region, boundary_grid_size, bounds);
}

}  // namespace gbc
