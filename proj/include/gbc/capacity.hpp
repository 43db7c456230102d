#pragma once

#include <span>
#include <vector>

#include "gbc/constellation.hpp"

namespace gbc {

struct CapacityPoint {
  double alpha = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

// Superposition-coding boundary of the degraded two-user channel (linear SNRs).
double c1(double alpha, double snr1);
double c2(double alpha, double snr2);

/// One boundary point per grid value; alpha = 0 and alpha = 1 are always present.
/// Output is sorted by alpha with duplicates removed.
std::vector<CapacityPoint> capacity_boundary(const ChannelParams& ch, std::span<const double> alpha_grid);

/// Uniform grid of `size` points on [0, 1].
std::vector<double> uniform_alpha_grid(std::size_t size);

/// Ratio of the capacity-boundary slope to the slope of time sharing between the
/// single-user corners, both taken at the sum-rate-optimal corner.
double relative_gain(double snr1, double snr2);

}  // namespace gbc
