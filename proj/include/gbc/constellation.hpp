#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace gbc {

// Minimum distance of a single-point alphabet.
inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

// Raised when a closed form is evaluated outside the power allocation regime
// it was derived for (alpha above the non-overlap threshold).
class OutOfRegimeError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Uniform, zero-mean, unit-power M-PAM alphabet. Points ascend with spacing dmin.
struct PamSpec {
  int order = 1;
  double dmin = kInfiniteDistance;
  std::vector<double> points{0.0};
};

PamSpec make_pam(int order);

/// A mass point of a discrete distribution on the real line.
struct Atom {
  double amplitude = 0.0;
  double prob = 0.0;
};

/// Point of the superimposed constellation. Its probability is exactly
/// multiplicity / (m1 * m2); multiplicity > 1 only where sums coincide.
struct SuperAtom {
  double amplitude = 0.0;
  std::uint32_t multiplicity = 1;
};

struct SuperConstellation {
  double alpha = 0.0;
  double power = 1.0;
  int m1 = 1;
  int m2 = 1;
  std::vector<SuperAtom> atoms;  // ascending amplitude

  double probability(const SuperAtom& atom) const {
    return static_cast<double>(atom.multiplicity) / static_cast<double>(m1 * m2);
  }
  std::vector<Atom> weighted_atoms() const;
  std::vector<double> amplitudes() const;
  double average_power() const;
};

/// x = sqrt(P) * (sqrt(alpha) * x1 + sqrt(1 - alpha) * x2), with coincident
/// amplitudes (closer than 1e-9 * sqrt(P)) merged into one atom.
SuperConstellation superimpose(const PamSpec& pam1, const PamSpec& pam2, double alpha, double power);

/// Largest user-1 power fraction for which the superimposed points stay distinct:
/// (m1^2 - 1) / (m1^2 m2^2 - 1).
double alpha_star(int m1, int m2);

/// Closed-form minimum distance sqrt(12 alpha P / (m1^2 - 1)), valid for 0 < alpha <= alpha*.
/// Throws OutOfRegimeError above alpha*.
double dmin_formula(int m1, int m2, double alpha, double power);

/// Exhaustive pairwise minimum distance. +inf for fewer than two points.
double dmin_bruteforce(std::span<const double> amplitudes);
double dmin_bruteforce(const SuperConstellation& c);

/// SNR pair of the degraded two-user channel; user 1 is the strong user.
struct ChannelParams {
  double snr1 = 1.0;  // linear
  double snr2 = 1.0;  // linear
  int n1 = 1;         // ceil(sqrt(snr1))
  int n2 = 1;         // ceil(sqrt(snr2))
  double snr1_db = 0.0;
  double snr2_db = 0.0;

  static ChannelParams from_linear(double snr1, double snr2);
  static ChannelParams from_db(double snr1_db, double snr2_db);
};

double db_to_linear(double db);
int quantized_gain(double snr);

}  // namespace gbc
