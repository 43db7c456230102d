#include "gbc/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gbc {

PamSpec make_pam(int order) {
  if (order < 1) {
    throw std::invalid_argument("make_pam: order must be >= 1, got " + std::to_string(order));
  }
  PamSpec pam;
  pam.order = order;
  if (order == 1) {
    return pam;
  }
  const double m = static_cast<double>(order);
  pam.dmin = std::sqrt(12.0 / (m * m - 1.0));
  pam.points.resize(static_cast<std::size_t>(order));
  const double half = 0.5 * pam.dmin;
  for (int i = 0; i < order; ++i) {
    // Odd integer offsets keep the alphabet exactly symmetric.
    pam.points[static_cast<std::size_t>(i)] = static_cast<double>(2 * i - (order - 1)) * half;
  }
  return pam;
}

std::vector<Atom> SuperConstellation::weighted_atoms() const {
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) {
    out.push_back({a.amplitude, probability(a)});
  }
  return out;
}

std::vector<double> SuperConstellation::amplitudes() const {
  std::vector<double> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) {
    out.push_back(a.amplitude);
  }
  return out;
}

double SuperConstellation::average_power() const {
  double acc = 0.0;
  for (const auto& a : atoms) {
    acc += probability(a) * a.amplitude * a.amplitude;
  }
  return acc;
}

SuperConstellation superimpose(const PamSpec& pam1, const PamSpec& pam2, double alpha, double power) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("superimpose: alpha must lie in [0, 1]");
  }
  if (!(power > 0.0) || !std::isfinite(power)) {
    throw std::invalid_argument("superimpose: power must be positive");
  }
  const double g1 = std::sqrt(power * alpha);
  const double g2 = std::sqrt(power * (1.0 - alpha));

  std::vector<double> sums;
  sums.reserve(pam1.points.size() * pam2.points.size());
  for (double a : pam1.points) {
    for (double b : pam2.points) {
      sums.push_back(g1 * a + g2 * b);
    }
  }
  std::sort(sums.begin(), sums.end());

  SuperConstellation c;
  c.alpha = alpha;
  c.power = power;
  c.m1 = pam1.order;
  c.m2 = pam2.order;

  const double tol = 1e-9 * std::sqrt(power);
  std::size_t i = 0;
  while (i < sums.size()) {
    const double anchor = sums[i];
    double acc = 0.0;
    std::uint32_t count = 0;
    while (i < sums.size() && sums[i] - anchor <= tol) {
      acc += sums[i];
      ++count;
      ++i;
    }
    c.atoms.push_back({acc / count, count});
  }
  return c;
}

double alpha_star(int m1, int m2) {
  if (m1 < 1 || m2 < 1 || m1 * m2 < 2) {
    throw std::invalid_argument("alpha_star: requires m1, m2 >= 1 and m1 * m2 >= 2");
  }
  const double a = static_cast<double>(m1) * m1;
  const double b = static_cast<double>(m2) * m2;
  return (a - 1.0) / (a * b - 1.0);
}

double dmin_formula(int m1, int m2, double alpha, double power) {
  if (m1 < 2) {
    throw std::invalid_argument("dmin_formula: m1 must be >= 2");
  }
  if (!(alpha > 0.0) || !(power > 0.0)) {
    throw std::invalid_argument("dmin_formula: alpha and power must be positive");
  }
  const double limit = alpha_star(m1, m2);
  if (alpha > limit * (1.0 + 1e-12)) {
    throw OutOfRegimeError("dmin_formula: alpha exceeds alpha* = " + std::to_string(limit) +
                           "; points overlap, use dmin_bruteforce");
  }
  const double a = static_cast<double>(m1) * m1;
  return std::sqrt(12.0 * alpha * power / (a - 1.0));
}

double dmin_bruteforce(std::span<const double> amplitudes) {
  double best = kInfiniteDistance;
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    for (std::size_t j = i + 1; j < amplitudes.size(); ++j) {
      best = std::min(best, std::abs(amplitudes[i] - amplitudes[j]));
    }
  }
  return best;
}

double dmin_bruteforce(const SuperConstellation& c) {
  const auto amps = c.amplitudes();
  return dmin_bruteforce(amps);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

int quantized_gain(double snr) { return static_cast<int>(std::ceil(std::sqrt(snr))); }

ChannelParams ChannelParams::from_linear(double snr1, double snr2) {
  if (!(snr1 > 0.0) || !(snr2 > 0.0) || !std::isfinite(snr1) || !std::isfinite(snr2)) {
    throw std::invalid_argument("ChannelParams: SNRs must be positive and finite");
  }
  if (!(snr1 > snr2)) {
    throw std::invalid_argument("ChannelParams: user 1 must be the strong user (snr1 > snr2)");
  }
  ChannelParams ch;
  ch.snr1 = snr1;
  ch.snr2 = snr2;
  ch.n1 = quantized_gain(snr1);
  ch.n2 = quantized_gain(snr2);
  ch.snr1_db = 10.0 * std::log10(snr1);
  ch.snr2_db = 10.0 * std::log10(snr2);
  return ch;
}

ChannelParams ChannelParams::from_db(double snr1_db, double snr2_db) {
  auto ch = from_linear(db_to_linear(snr1_db), db_to_linear(snr2_db));
  ch.snr1_db = snr1_db;
  ch.snr2_db = snr2_db;
  return ch;
}

}  // namespace gbc
