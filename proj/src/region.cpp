#include "gbc/region.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "gbc/parallel.hpp"

namespace gbc {

namespace {

// Alpha at which an order pair's time-sharing generator sits.
double generator_alpha(OrderPair order) {
  if (order.m1 * order.m2 < 2) {
    return 1.0;
  }
  return alpha_star(order.m1, order.m2);
}

std::uint64_t task_key(OrderPair order, double alpha) {
  std::uint64_t key = static_cast<std::uint64_t>(order.m1) << 32 | static_cast<std::uint32_t>(order.m2);
  return key ^ (std::bit_cast<std::uint64_t>(alpha) * 0x9E3779B97F4A7C15ULL);
}

bool frontier_less(const RatePoint& a, const RatePoint& b) {
  if (a.r1 != b.r1) return a.r1 > b.r1;
  if (a.r2 != b.r2) return a.r2 > b.r2;
  if (a.m1 != b.m1) return a.m1 < b.m1;
  if (a.m2 != b.m2) return a.m2 < b.m2;
  return a.alpha < b.alpha;
}

}  // namespace

std::string_view to_string(RateScheme scheme) {
  switch (scheme) {
    case RateScheme::exact_mi: return "exact_mi";
    case RateScheme::closed_form_lb: return "closed_form_lb";
    case RateScheme::ts_combination: return "ts_combination";
  }
  return "unknown";
}

RateScheme parse_rate_scheme(std::string_view name) {
  if (name == "exact_mi") return RateScheme::exact_mi;
  if (name == "closed_form_lb") return RateScheme::closed_form_lb;
  if (name == "ts_combination") return RateScheme::ts_combination;
  throw std::invalid_argument("unknown rate scheme '" + std::string(name) + "'");
}

bool RateRegion::contains(double r1, double r2, double tol) const {
  if (frontier.empty()) {
    return false;
  }
  const double x = std::max(r1, 0.0);
  const double y = std::max(r2, 0.0);
  // First frontier point reaching x; frontier r2 decreases with r1.
  auto it = std::lower_bound(frontier.begin(), frontier.end(), x - tol,
                             [](const RatePoint& p, double v) { return p.r1 < v; });
  if (it == frontier.end()) {
    return false;
  }
  if (!convex || it == frontier.begin()) {
    return y <= it->r2 + tol;
  }
  const auto& left = *(it - 1);
  const auto& right = *it;
  const double span = right.r1 - left.r1;
  const double t = span > 0.0 ? std::clamp((x - left.r1) / span, 0.0, 1.0) : 1.0;
  return y <= left.r2 + t * (right.r2 - left.r2) + tol;
}

bool is_admissible(const ChannelParams& ch, OrderPair order) {
  return order.m1 >= 1 && order.m2 >= 1 && order.m1 * order.m2 <= ch.n1 && order.m2 <= ch.n2;
}

std::vector<OrderPair> admissible_orders(const ChannelParams& ch) {
  std::vector<OrderPair> out;
  for (int m1 = 1; m1 <= ch.n1; ++m1) {
    for (int m2 = 1; m2 <= ch.n2 && m1 * m2 <= ch.n1; ++m2) {
      out.push_back({m1, m2});
    }
  }
  return out;
}

std::vector<OrderPair> case1_orders(const ChannelParams& ch) {
  std::vector<OrderPair> out;
  for (int m1 = 2; m1 <= ch.n1 / 2; ++m1) {
    const int m2 = ch.n1 / m1;
    if (m2 >= 2 && m2 <= ch.n2) {
      out.push_back({m1, m2});
    }
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> alpha_grid(const ChannelParams& ch, OrderPair order, std::size_t size) {
  if (size < 2) {
    throw std::invalid_argument("alpha_grid: need at least two points");
  }
  if (order.m1 < 2 || order.m1 * order.m2 < 2) {
    return {};
  }
  const double top = alpha_star(order.m1, order.m2);
  // Reach down to where user 1's rate is negligible (alpha * snr1 ~ 1e-2).
  const double lo = top * std::min(1e-3, 1e-2 / (top * ch.snr1));
  const double ratio = std::log(top / lo) / static_cast<double>(size - 1);
  std::vector<double> grid(size);
  for (std::size_t i = 0; i < size; ++i) {
    grid[i] = lo * std::exp(ratio * static_cast<double>(i));
  }
  grid.back() = top;
  return grid;
}

double closed_form_rate(User user, const ChannelParams& ch, double alpha, OrderPair order) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("closed_form_rate: alpha must lie in [0, 1]");
  }
  if (user == User::one) {
    if (order.m1 < 2 || alpha == 0.0) {
      return 0.0;
    }
    if (alpha == 1.0) {
      const auto pam = make_pam(order.m1);
      return ow_bound(std::log2(static_cast<double>(order.m1)), std::sqrt(ch.snr1) * pam.dmin);
    }
    return mi_lb_user1(alpha, ch.snr1, order.m1, order.m2);
  }
  if (order.m2 < 2 || alpha == 1.0) {
    return 0.0;
  }
  return mi_lb_user2(alpha, ch.snr2, order.m2);
}

RatePoint rate_point(const ChannelParams& ch, OrderPair order, double alpha, const MiOptions& options) {
  RatePoint p;
  p.alpha = alpha;
  p.m1 = order.m1;
  p.m2 = order.m2;
  p.method = options.method;
  if (options.method == MiMethod::closed_form_lb) {
    p.scheme = RateScheme::closed_form_lb;
    p.r1 = closed_form_rate(User::one, ch, alpha, order);
    p.r2 = closed_form_rate(User::two, ch, alpha, order);
    return p;
  }
  p.scheme = RateScheme::exact_mi;
  const std::uint64_t task_seed = derive_seed(options.seed, task_key(order, alpha));
  MiOptions o1 = options;
  MiOptions o2 = options;
  o1.seed = derive_seed(task_seed, 1);
  o2.seed = derive_seed(task_seed, 2);
  const auto i1 = mi_exact_tin(User::one, ch, alpha, order.m1, order.m2, o1);
  const auto i2 = mi_exact_tin(User::two, ch, alpha, order.m1, order.m2, o2);
  p.r1 = i1.value;
  p.r2 = i2.value;
  p.err_est = std::max(i1.err_est, i2.err_est);
  return p;
}

RateRegion sweep_alpha_region(const ChannelParams& ch, std::span<const OrderPair> orders,
                              std::size_t alpha_grid_size, const MiOptions& options) {
  std::vector<OrderPair> sorted(orders.begin(), orders.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<std::pair<OrderPair, double>> tasks;
  for (const auto& order : sorted) {
    if (!is_admissible(ch, order)) {
      throw std::invalid_argument("sweep_alpha_region: order (" + std::to_string(order.m1) + ", " +
                                  std::to_string(order.m2) + ") violates the modulation-order constraint");
    }
    auto alphas = alpha_grid(ch, order, alpha_grid_size);
    alphas.push_back(0.0);
    alphas.push_back(1.0);
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    for (double a : alphas) {
      tasks.emplace_back(order, a);
    }
  }

  RateRegion region;
  region.generators = parallel_map(tasks.size(), [&](std::size_t i) {
    return rate_point(ch, tasks[i].first, tasks[i].second, options);
  });
  region.frontier = pareto_frontier(region.generators);
  return region;
}

RateRegion ts_region_from(const ChannelParams& ch, std::span<const RatePoint> evaluated, const MiOptions& options) {
  std::map<std::pair<OrderPair, double>, RatePoint> picked;
  for (const auto& p : evaluated) {
    if (p.scheme == RateScheme::ts_combination) continue;
    const OrderPair order{p.m1, p.m2};
    if (order.m1 * order.m2 >= 2 && p.alpha == generator_alpha(order)) {
      picked.emplace(std::make_pair(order, p.alpha), p);
    }
  }

  std::vector<std::pair<OrderPair, double>> missing;
  for (const auto& order : admissible_orders(ch)) {
    if (order.m1 * order.m2 < 2) continue;
    const auto key = std::make_pair(order, generator_alpha(order));
    if (!picked.contains(key)) missing.push_back(key);
  }
  const std::pair<OrderPair, double> corner{OrderPair{ch.n1, 1}, 1.0};
  if (!picked.contains(corner) &&
      std::find(missing.begin(), missing.end(), corner) == missing.end()) {
    missing.push_back(corner);
  }
  const auto computed = parallel_map(missing.size(), [&](std::size_t i) {
    return rate_point(ch, missing[i].first, missing[i].second, options);
  });
  for (std::size_t i = 0; i < missing.size(); ++i) {
    picked.emplace(missing[i], computed[i]);
  }

  RateRegion region;
  region.convex = true;
  for (auto& [key, p] : picked) {
    region.generators.push_back(p);
  }
  region.frontier = upper_right_hull(region.generators);
  return region;
}

RateRegion ts_region(const ChannelParams& ch, const MiOptions& options) {
  return ts_region_from(ch, {}, options);
}

std::vector<AdjacentPair> adjacent_ts_pairs(const ChannelParams& ch) {
  const auto orders = case1_orders(ch);
  std::vector<AdjacentPair> out;
  for (std::size_t i = 0; i + 1 < orders.size(); ++i) {
    const auto& a = orders[i];
    const auto& b = orders[i + 1];
    if (b.m1 == a.m1 + 1 && ch.n1 >= 2 * (a.m1 + 1)) {
      out.push_back({a, b});
    }
  }
  return out;
}

std::vector<RatePoint> pareto_frontier(std::span<const RatePoint> points) {
  std::vector<RatePoint> sorted(points.begin(), points.end());
  std::stable_sort(sorted.begin(), sorted.end(), frontier_less);
  std::vector<RatePoint> out;
  double best_r2 = -std::numeric_limits<double>::infinity();
  for (const auto& p : sorted) {
    if (p.r2 > best_r2) {
      out.push_back(p);
      best_r2 = p.r2;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<RatePoint> upper_right_hull(std::span<const RatePoint> points) {
  // Pareto points run with r1 increasing and r2 decreasing; the first and last are
  // always hull vertices once the axis projections are added.
  const auto pareto = pareto_frontier(points);
  std::vector<RatePoint> hull;
  for (const auto& c : pareto) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      const double cross = (b.r1 - a.r1) * (c.r2 - a.r2) - (b.r2 - a.r2) * (c.r1 - a.r1);
      if (cross < 0.0) break;  // strict right turn keeps b
      hull.pop_back();
    }
    hull.push_back(c);
  }
  return hull;
}

RatePoint ts_mix(const RatePoint& a, const RatePoint& b, double lambda, std::size_t index_a, std::size_t index_b) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("ts_mix: lambda must lie in [0, 1]");
  }
  RatePoint p;
  p.r1 = lambda * a.r1 + (1.0 - lambda) * b.r1;
  p.r2 = lambda * a.r2 + (1.0 - lambda) * b.r2;
  p.alpha = std::numeric_limits<double>::quiet_NaN();
  p.m1 = 0;
  p.m2 = 0;
  p.scheme = RateScheme::ts_combination;
  p.method = a.method;
  p.err_est = lambda * a.err_est + (1.0 - lambda) * b.err_est;
  p.ts_lambda = lambda;
  p.parents = std::make_pair(index_a, index_b);
  return p;
}

std::vector<RatePoint> ts_edge_samples(const RateRegion& region, std::size_t per_edge) {
  std::vector<RatePoint> out;
  if (!region.convex) {
    return out;
  }
  for (std::size_t k = 0; k + 1 < region.frontier.size(); ++k) {
    for (std::size_t j = 1; j <= per_edge; ++j) {
      const double lambda = static_cast<double>(j) / static_cast<double>(per_edge + 1);
      out.push_back(ts_mix(region.frontier[k], region.frontier[k + 1], lambda, k, k + 1));
    }
  }
  return out;
}

AchievableRegion build_achievable_region(const ChannelParams& ch, std::size_t alpha_grid_size,
                                         const MiOptions& options) {
  AchievableRegion r;
  const auto orders = admissible_orders(ch);
  r.sweep = sweep_alpha_region(ch, orders, alpha_grid_size, options);
  r.ts = ts_region_from(ch, r.sweep.generators, options);
  return r;
}

}  // namespace gbc
