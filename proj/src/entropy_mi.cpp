#include "gbc/entropy_mi.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace gbc {

namespace {

constexpr double kLn2 = std::numbers::ln2;
// Mixture terms more than e^-60 below the dominant one are dropped.
constexpr double kLogCutoff = 60.0;

struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // normalized to sum to one
};

const HermiteRule& hermite_rule(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<HermiteRule>> cache;

  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) {
    return *it->second;
  }
  // Weight exp(-x^2) on the real line.
  gsl_integration_fixed_workspace* ws = gsl_integration_fixed_alloc(
      gsl_integration_fixed_hermite, static_cast<std::size_t>(order), 0.0, 1.0, 0.0, 0.0);
  if (ws == nullptr) {
    throw std::runtime_error("Gauss-Hermite rule allocation failed for order " + std::to_string(order));
  }
  auto rule = std::make_unique<HermiteRule>();
  const double* x = gsl_integration_fixed_nodes(ws);
  const double* w = gsl_integration_fixed_weights(ws);
  rule->nodes.assign(x, x + order);
  rule->weights.assign(w, w + order);
  gsl_integration_fixed_free(ws);

  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  for (double& wi : rule->weights) {
    wi *= inv_sqrt_pi;
  }
  return *cache.emplace(order, std::move(rule)).first->second;
}

// Unit-variance Gaussian mixture with sorted means.
class StandardMixture {
public:
  StandardMixture(std::span<const Atom> atoms, double scale) {
    std::vector<Atom> sorted(atoms.begin(), atoms.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const Atom& a, const Atom& b) { return a.amplitude < b.amplitude; });
    for (const auto& a : sorted) {
      if (a.prob <= 0.0) {
        continue;
      }
      means_.push_back(a.amplitude / scale);
      probs_.push_back(a.prob);
      log_probs_.push_back(std::log(a.prob));
    }
    max_log_prob_ = *std::max_element(log_probs_.begin(), log_probs_.end());
  }

  std::span<const double> means() const { return means_; }
  std::span<const double> probs() const { return probs_; }

  // Natural log of the mixture density at y.
  double log_density(double y) const {
    const auto n = means_.size();
    auto it = std::lower_bound(means_.begin(), means_.end(), y);
    std::size_t hi = static_cast<std::size_t>(it - means_.begin());
    std::size_t lo = hi;  // scan [.., lo) leftwards and [hi, ..) rightwards

    double run_max = -std::numeric_limits<double>::infinity();
    double run_sum = 0.0;
    auto accumulate = [&](double t) {
      if (t > run_max) {
        run_sum = run_sum * std::exp(run_max - t) + 1.0;
        run_max = t;
      } else {
        run_sum += std::exp(t - run_max);
      }
    };

    while (hi < n) {
      const double q = -0.5 * (y - means_[hi]) * (y - means_[hi]);
      if (q + max_log_prob_ < run_max - kLogCutoff) {
        break;
      }
      accumulate(log_probs_[hi] + q);
      ++hi;
    }
    while (lo > 0) {
      const double q = -0.5 * (y - means_[lo - 1]) * (y - means_[lo - 1]);
      if (q + max_log_prob_ < run_max - kLogCutoff) {
        break;
      }
      accumulate(log_probs_[lo - 1] + q);
      --lo;
    }
    return run_max + std::log(run_sum) - 0.5 * std::log(2.0 * std::numbers::pi);
  }

private:
  std::vector<double> means_;
  std::vector<double> probs_;
  std::vector<double> log_probs_;
  double max_log_prob_ = 0.0;
};

// Entropy in nats of the unit-variance mixture.
double quadrature_entropy_nats(const StandardMixture& mix, int order) {
  const auto& rule = hermite_rule(order);
  const auto means = mix.means();
  const auto probs = mix.probs();
  double h = 0.0;
  for (std::size_t i = 0; i < means.size(); ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      inner += rule.weights[j] * mix.log_density(means[i] + std::numbers::sqrt2 * rule.nodes[j]);
    }
    h -= probs[i] * inner;
  }
  return h;
}

EntropyEstimate monte_carlo_entropy_nats(const StandardMixture& mix, std::size_t samples, std::uint64_t seed) {
  const auto means = mix.means();
  const auto probs = mix.probs();
  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> pick(0.0, cdf.back());
  std::normal_distribution<double> noise(0.0, 1.0);

  // Welford accumulation of -log f(Y).
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double u = pick(gen);
    auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    idx = std::min(idx, means.size() - 1);
    const double y = means[idx] + noise(gen);
    const double v = -mix.log_density(y);
    const double delta = v - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (v - mean);
  }
  const double n = static_cast<double>(samples);
  const double sd = samples > 1 ? std::sqrt(m2 / (n - 1.0)) : 0.0;
  return {mean, 3.0 * sd / std::sqrt(n)};
}

std::vector<Atom> merge_atoms(std::vector<Atom> atoms, double tol) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.amplitude < b.amplitude; });
  std::vector<Atom> out;
  std::size_t i = 0;
  while (i < atoms.size()) {
    const double anchor = atoms[i].amplitude;
    double weighted = 0.0;
    double mass = 0.0;
    while (i < atoms.size() && atoms[i].amplitude - anchor <= tol) {
      weighted += atoms[i].amplitude * atoms[i].prob;
      mass += atoms[i].prob;
      ++i;
    }
    out.push_back({mass > 0.0 ? weighted / mass : anchor, mass});
  }
  return out;
}

double second_moment(std::span<const Atom> atoms) {
  double acc = 0.0;
  for (const auto& a : atoms) {
    acc += a.prob * a.amplitude * a.amplitude;
  }
  return acc;
}

std::vector<Atom> scaled_pam(int order, double gain) {
  const auto pam = make_pam(order);
  std::vector<Atom> atoms;
  atoms.reserve(pam.points.size());
  const double p = 1.0 / static_cast<double>(order);
  for (double x : pam.points) {
    atoms.push_back({gain * x, p});
  }
  return atoms;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view to_string(MiMethod method) {
  switch (method) {
    case MiMethod::quadrature: return "quadrature";
    case MiMethod::monte_carlo: return "monte_carlo";
    case MiMethod::closed_form_lb: return "closed_form_lb";
  }
  return "unknown";
}

MiMethod parse_mi_method(std::string_view name) {
  if (name == "quad" || name == "quadrature") return MiMethod::quadrature;
  if (name == "mc" || name == "monte_carlo") return MiMethod::monte_carlo;
  if (name == "lb" || name == "closed_form_lb") return MiMethod::closed_form_lb;
  throw std::invalid_argument("unknown MI method '" + std::string(name) + "'");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t key) {
  return splitmix64(base ^ splitmix64(key));
}

double gaussian_entropy(double var) {
  return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * var);
}

EntropyEstimate mixture_entropy(std::span<const Atom> atoms, double var, const MiOptions& options) {
  if (atoms.empty()) {
    throw std::invalid_argument("mixture_entropy: empty atom list");
  }
  if (!(var > 0.0) || !std::isfinite(var)) {
    throw std::invalid_argument("mixture_entropy: variance must be positive");
  }
  const double sigma = std::sqrt(var);
  const StandardMixture mix(atoms, sigma);
  const double offset_bits = std::log2(sigma);

  switch (options.method) {
    case MiMethod::quadrature: {
      if (options.quad_order < 2) {
        throw std::invalid_argument("mixture_entropy: quadrature order must be >= 2");
      }
      const double coarse = quadrature_entropy_nats(mix, options.quad_order) / kLn2;
      const double fine = quadrature_entropy_nats(mix, 2 * options.quad_order) / kLn2;
      return {fine + offset_bits, std::abs(fine - coarse)};
    }
    case MiMethod::monte_carlo: {
      if (options.mc_samples < 2) {
        throw std::invalid_argument("mixture_entropy: need at least two Monte Carlo samples");
      }
      const auto est = monte_carlo_entropy_nats(mix, options.mc_samples, options.seed);
      return {est.bits / kLn2 + offset_bits, est.err_est / kLn2};
    }
    case MiMethod::closed_form_lb:
      break;
  }
  throw std::invalid_argument("mixture_entropy: closed_form_lb is not an entropy method");
}

double EffectiveChannel::signal_entropy() const {
  double h = 0.0;
  for (const auto& a : signal_atoms) {
    if (a.prob > 0.0) {
      h -= a.prob * std::log2(a.prob);
    }
  }
  return h;
}

double EffectiveChannel::noise_variance() const { return second_moment(noise_atoms) + gaussian_var; }

EffectiveChannel EffectiveChannel::normalized() const {
  const double s = 1.0 / std::sqrt(noise_variance());
  EffectiveChannel out = *this;
  for (auto& a : out.signal_atoms) a.amplitude *= s;
  for (auto& a : out.noise_atoms) a.amplitude *= s;
  out.gaussian_var *= s * s;
  return out;
}

std::vector<Atom> EffectiveChannel::received_atoms() const {
  std::vector<Atom> sums;
  sums.reserve(signal_atoms.size() * noise_atoms.size());
  for (const auto& s : signal_atoms) {
    for (const auto& i : noise_atoms) {
      sums.push_back({s.amplitude + i.amplitude, s.prob * i.prob});
    }
  }
  const double scale = std::sqrt(second_moment(signal_atoms) + second_moment(noise_atoms));
  return merge_atoms(std::move(sums), 1e-9 * scale);
}

EffectiveChannel tin_channel(User user, const ChannelParams& ch, double alpha, int m1, int m2) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("tin_channel: alpha must lie in [0, 1]");
  }
  const double snr = user == User::one ? ch.snr1 : ch.snr2;
  const double g1 = std::sqrt(snr * alpha);
  const double g2 = std::sqrt(snr * (1.0 - alpha));
  const double tol = 1e-9 * std::sqrt(snr);

  EffectiveChannel c;
  if (user == User::one) {
    c.signal_atoms = merge_atoms(scaled_pam(m1, g1), tol);
    c.noise_atoms = merge_atoms(scaled_pam(m2, g2), tol);
  } else {
    c.signal_atoms = merge_atoms(scaled_pam(m2, g2), tol);
    c.noise_atoms = merge_atoms(scaled_pam(m1, g1), tol);
  }
  c.gaussian_var = 1.0;
  return c;
}

MiEstimate mi_exact(const EffectiveChannel& channel, const MiOptions& options) {
  if (options.method == MiMethod::closed_form_lb) {
    throw std::invalid_argument("mi_exact: closed_form_lb is not an exact MI method");
  }
  const double cap = channel.signal_entropy();
  if (cap == 0.0) {
    return {0.0, options.method, 0.0};
  }
  MiOptions joint = options;
  MiOptions conditional = options;
  joint.seed = derive_seed(options.seed, 1);
  conditional.seed = derive_seed(options.seed, 2);

  const auto received = channel.received_atoms();
  const auto h_y = mixture_entropy(received, channel.gaussian_var, joint);
  const auto h_y_given_s = mixture_entropy(channel.noise_atoms, channel.gaussian_var, conditional);

  const double raw = h_y.bits - h_y_given_s.bits;
  return {std::clamp(raw, 0.0, cap), options.method, h_y.err_est + h_y_given_s.err_est};
}

MiEstimate mi_exact_tin(User user, const ChannelParams& ch, double alpha, int m1, int m2, const MiOptions& options) {
  return mi_exact(tin_channel(user, ch, alpha, m1, m2), options);
}

double shaping_loss_bits() { return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e / 12.0); }

double ow_bound(double entropy_bits, double dmin) {
  if (entropy_bits < 0.0 || !(dmin > 0.0)) {
    throw std::invalid_argument("ow_bound: entropy must be >= 0 and dmin > 0");
  }
  const double penalty = std::isinf(dmin) ? 0.0 : 0.5 * std::log2(1.0 + 12.0 / (dmin * dmin));
  return std::max(0.0, entropy_bits - shaping_loss_bits() - penalty);
}

double mi_lb_user1(double alpha, double snr1, int m1, int m2) {
  if (m1 < 2) {
    throw std::invalid_argument("mi_lb_user1: m1 must be >= 2");
  }
  if (!(snr1 > 0.0)) {
    throw std::invalid_argument("mi_lb_user1: snr1 must be positive");
  }
  // dmin of sqrt(snr1) X; throws OutOfRegimeError above alpha*.
  const double d = dmin_formula(m1, m2, alpha, snr1);
  return ow_bound(std::log2(static_cast<double>(m1)), d);
}

double mi_lb_user2(double alpha, double snr2, int m2) {
  if (m2 < 2) {
    throw std::invalid_argument("mi_lb_user2: m2 must be >= 2");
  }
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("mi_lb_user2: alpha must lie in [0, 1)");
  }
  if (!(snr2 > 0.0)) {
    throw std::invalid_argument("mi_lb_user2: snr2 must be positive");
  }
  const double m = static_cast<double>(m2);
  // dmin^2 of the unit-noise-normalized user-2 alphabet.
  const double d2 = 12.0 * (1.0 - alpha) * snr2 / ((1.0 + alpha * snr2) * (m * m - 1.0));
  return ow_bound(std::log2(m), std::sqrt(d2));
}

}  // namespace gbc
