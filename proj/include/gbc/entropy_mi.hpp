#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gbc/constellation.hpp"

namespace gbc {

enum class MiMethod { quadrature, monte_carlo, closed_form_lb };

std::string_view to_string(MiMethod method);
MiMethod parse_mi_method(std::string_view name);

inline constexpr std::uint64_t kDefaultSeed = 0xD15C0DE;

struct MiOptions {
  MiMethod method = MiMethod::quadrature;
  int quad_order = 96;
  std::size_t mc_samples = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
};

/// Derives an independent stream seed from a base seed and a task key.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t key);

struct EntropyEstimate {
  double bits = 0.0;
  double err_est = 0.0;
};

/// Differential entropy (bits) of S + Z, S drawn from `atoms`, Z ~ N(0, var).
///
/// Quadrature: Gauss-Hermite over each atom's Gaussian, evaluated at `quad_order` and
/// 2 * `quad_order` nodes; the higher-order value is returned and the difference is the
/// error estimate. The rule spans the whole real line, so no separate tail term is needed.
/// Monte Carlo: `mc_samples` seeded draws, err_est = 3 sigma / sqrt(n).
EntropyEstimate mixture_entropy(std::span<const Atom> atoms, double var, const MiOptions& options = {});

/// Gaussian entropy 0.5 * log2(2 pi e var).
double gaussian_entropy(double var);

struct MiEstimate {
  double value = 0.0;  // bits per channel use
  MiMethod method = MiMethod::quadrature;
  double err_est = 0.0;
};

enum class User { one = 1, two = 2 };

/// TIN receiver of one user: Y = S + I + N(0, gaussian_var), where S is the intended
/// user's scaled alphabet and I the scaled interfering alphabet.
struct EffectiveChannel {
  std::vector<Atom> signal_atoms;
  std::vector<Atom> noise_atoms;
  double gaussian_var = 1.0;

  double signal_entropy() const;
  double noise_variance() const;  // interference power + gaussian_var
  /// Scales the channel so the total effective noise has unit variance.
  EffectiveChannel normalized() const;
  /// Distribution of S + I with coincident points merged.
  std::vector<Atom> received_atoms() const;
};

/// Y_k = sqrt(snr_k) (sqrt(alpha) X1 + sqrt(1 - alpha) X2) + Z seen by `user`.
EffectiveChannel tin_channel(User user, const ChannelParams& ch, double alpha, int m1, int m2);

/// I(S; S + I + Z) = h(S + I + Z) - h(I + Z), clamped to [0, H(S)].
MiEstimate mi_exact(const EffectiveChannel& channel, const MiOptions& options = {});

/// I(X_k; Y_k) under TIN decoding for the superimposed PAM pair.
MiEstimate mi_exact_tin(User user, const ChannelParams& ch, double alpha, int m1, int m2,
                        const MiOptions& options = {});

/// 0.5 * log2(2 pi e / 12): shaping loss of a uniform discrete input.
double shaping_loss_bits();

/// Lower bound on I(F; F + Z) for unit-variance Z: H(F) minus shaping loss minus
/// 0.5 log2(1 + 12 / dmin^2), clamped at zero. dmin = +inf is allowed.
double ow_bound(double entropy_bits, double dmin);

/// Closed-form lower bound on user 1's TIN rate, 0 < alpha <= alpha*(m1, m2).
double mi_lb_user1(double alpha, double snr1, int m1, int m2);

/// Closed-form lower bound on user 2's TIN rate, 0 <= alpha < 1.
double mi_lb_user2(double alpha, double snr2, int m2);

}  // namespace gbc
