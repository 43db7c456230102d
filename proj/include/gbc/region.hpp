#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gbc/constellation.hpp"
#include "gbc/entropy_mi.hpp"

namespace gbc {

enum class RateScheme { exact_mi, closed_form_lb, ts_combination };

std::string_view to_string(RateScheme scheme);
RateScheme parse_rate_scheme(std::string_view name);

struct OrderPair {
  int m1 = 1;
  int m2 = 1;
  auto operator<=>(const OrderPair&) const = default;
};

struct RatePoint {
  double r1 = 0.0;
  double r2 = 0.0;
  double alpha = 0.0;
  int m1 = 1;
  int m2 = 1;
  RateScheme scheme = RateScheme::exact_mi;
  MiMethod method = MiMethod::quadrature;
  double err_est = 0.0;
  std::optional<double> ts_lambda;
  // Indices of the two endpoints a time-sharing point mixes, lambda * a + (1 - lambda) * b.
  std::optional<std::pair<std::size_t, std::size_t>> parents;
};

/// Downward-closed rate region described by its generating points.
/// A convex region's frontier is the vertex list of its upper-right hull; otherwise the
/// frontier is the Pareto staircase of the generators.
struct RateRegion {
  std::vector<RatePoint> generators;
  std::vector<RatePoint> frontier;  // Pareto-maximal, r1 ascending
  bool convex = false;

  bool contains(double r1, double r2, double tol = 0.0) const;
};

/// Orders allowed by m1 * m2 <= n1 and m2 <= n2, sorted lexicographically.
std::vector<OrderPair> admissible_orders(const ChannelParams& ch);
bool is_admissible(const ChannelParams& ch, OrderPair order);

/// (m1, floor(n1 / m1)) for 2 <= m1 <= n1 / 2, keeping 2 <= m2 <= n2.
std::vector<OrderPair> case1_orders(const ChannelParams& ch);

/// Geometric grid of `size` points on (0, alpha*], ending exactly at alpha*.
/// Empty when alpha* is zero or undefined (m1 = 1).
std::vector<double> alpha_grid(const ChannelParams& ch, OrderPair order, std::size_t size);

/// Closed-form lower bound on one user's TIN rate at any alpha where one is available:
/// zero for a silent user, the single-user bound at alpha = 1, and the superposition
/// bounds otherwise. Throws OutOfRegimeError for user 1 with alpha in (alpha*, 1).
double closed_form_rate(User user, const ChannelParams& ch, double alpha, OrderPair order);

/// Rate pair (I(X1;Y1), I(X2;Y2)) for one configuration, or its closed-form bounds
/// when options.method is closed_form_lb.
RatePoint rate_point(const ChannelParams& ch, OrderPair order, double alpha, const MiOptions& options);

/// Rate pairs over alpha in {0} u (0, alpha*] u {1} for every order pair.
RateRegion sweep_alpha_region(const ChannelParams& ch, std::span<const OrderPair> orders,
                              std::size_t alpha_grid_size, const MiOptions& options);

/// Convex closure of the alpha* points of all admissible orders and user 1's
/// single-user corner (n1, 1) at alpha = 1.
RateRegion ts_region(const ChannelParams& ch, const MiOptions& options);

/// Same as ts_region, reusing already evaluated points (those at alpha* are picked out).
RateRegion ts_region_from(const ChannelParams& ch, std::span<const RatePoint> evaluated,
                          const MiOptions& options);

struct AdjacentPair {
  OrderPair a;
  OrderPair b;
};

/// Consecutive case-1 orders (m1, .) and (m1 + 1, .) with n1 >= 2 (m1 + 1).
std::vector<AdjacentPair> adjacent_ts_pairs(const ChannelParams& ch);

std::vector<RatePoint> pareto_frontier(std::span<const RatePoint> points);

/// Vertices of the upper-right convex hull of the points and their axis projections.
std::vector<RatePoint> upper_right_hull(std::span<const RatePoint> points);

/// lambda * a + (1 - lambda) * b.
RatePoint ts_mix(const RatePoint& a, const RatePoint& b, double lambda, std::size_t index_a, std::size_t index_b);

/// Time-sharing points along every frontier edge of a convex region; `per_edge`
/// interior lambdas per edge.
std::vector<RatePoint> ts_edge_samples(const RateRegion& region, std::size_t per_edge);

/// The full achievable region: the alpha sweep united with the time-sharing hull.
struct AchievableRegion {
  RateRegion sweep;
  RateRegion ts;

  bool contains(double r1, double r2, double tol = 0.0) const {
    return sweep.contains(r1, r2, tol) || ts.contains(r1, r2, tol);
  }
};

AchievableRegion build_achievable_region(const ChannelParams& ch, std::size_t alpha_grid_size,
                                         const MiOptions& options);

}  // namespace gbc
