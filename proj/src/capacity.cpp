#include "gbc/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gbc {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("capacity: alpha must lie in [0, 1]");
  }
}

void check_snr(double snr) {
  if (!(snr > 0.0) || !std::isfinite(snr)) {
    throw std::invalid_argument("capacity: SNR must be positive and finite");
  }
}

}  // namespace

double c1(double alpha, double snr1) {
  check_alpha(alpha);
  check_snr(snr1);
  return 0.5 * std::log2(1.0 + alpha * snr1);
}

double c2(double alpha, double snr2) {
  check_alpha(alpha);
  check_snr(snr2);
  return 0.5 * std::log2(1.0 + (1.0 - alpha) * snr2 / (1.0 + alpha * snr2));
}

std::vector<CapacityPoint> capacity_boundary(const ChannelParams& ch, std::span<const double> alpha_grid) {
  if (alpha_grid.empty()) {
    throw std::invalid_argument("capacity_boundary: empty alpha grid");
  }
  std::vector<double> alphas(alpha_grid.begin(), alpha_grid.end());
  for (double a : alphas) {
    check_alpha(a);
  }
  alphas.push_back(0.0);
  alphas.push_back(1.0);
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  std::vector<CapacityPoint> out;
  out.reserve(alphas.size());
  for (double a : alphas) {
    out.push_back({a, c1(a, ch.snr1), c2(a, ch.snr2)});
  }
  return out;
}

std::vector<double> uniform_alpha_grid(std::size_t size) {
  if (size < 2) {
    throw std::invalid_argument("uniform_alpha_grid: need at least two points");
  }
  std::vector<double> grid(size);
  const double step = 1.0 / static_cast<double>(size - 1);
  for (std::size_t i = 0; i < size; ++i) {
    grid[i] = static_cast<double>(i) * step;
  }
  grid.back() = 1.0;
  return grid;
}

double relative_gain(double snr1, double snr2) {
  check_snr(snr1);
  check_snr(snr2);
  const double log_ratio_den = std::log2(1.0 + snr2);
  if (!(log_ratio_den > 0.0)) {
    throw std::invalid_argument("relative_gain: log2(1 + snr2) vanishes");
  }
  return (snr2 * (1.0 + snr1)) / (snr1 * (1.0 + snr2)) * std::log2(1.0 + snr1) / log_ratio_den;
}

}  // namespace gbc
