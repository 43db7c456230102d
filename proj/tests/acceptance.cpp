// Acceptance gate: one PASS/FAIL line per primary criterion, each within its runtime limit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gbc/capacity.hpp"
#include "gbc/commands.hpp"
#include "gbc/constellation.hpp"
#include "gbc/entropy_mi.hpp"
#include "gbc/gap.hpp"
#include "gbc/parallel.hpp"
#include "gbc/region.hpp"

using namespace gbc;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("gbc_acceptance_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

Outcome constants() {
  double worst = 0.0;
  std::string names;
  for (const auto& c : paper_constants()) {
    const double diff = std::abs(c.value - c.quoted);
    worst = std::max(worst, diff);
    if (diff > 1e-3) names += " " + c.name;
  }
  std::ostringstream sink;
  const bool cmd_ok = cli::cmd_constants(sink) == 0;
  return {names.empty() && cmd_ok && paper_constants().size() == 9,
          "9 constants, worst |diff| " + fmt("%.6f", worst) + (names.empty() ? "" : ", off:" + names)};
}

Outcome lemma1_oracle() {
  std::mt19937_64 rng(kDefaultSeed);
  std::uniform_int_distribution<int> d1(2, 16);
  std::uniform_int_distribution<int> d2(2, 8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int trials = 20000;
  int bad = 0;
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const int m1 = d1(rng);
    const int m2 = d2(rng);
    const double alpha = alpha_star(m1, m2) * (1.0 - u(rng));  // (0, alpha*]
    const double power = 100.0 - 99.9 * u(rng);                // (0.1, 100]
    const double f = dmin_formula(m1, m2, alpha, power);
    const double b = dmin_bruteforce(superimpose(make_pam(m1), make_pam(m2), alpha, power));
    const double rel = std::abs(f - b) / f;
    worst = std::max(worst, rel);
    if (!(rel <= 1e-9)) ++bad;
  }
  return {bad == 0, std::to_string(trials) + " tuples, worst rel diff " + fmt("%.3g", worst)};
}

Outcome bound_dominance() {
  struct Config {
    ChannelParams ch;
    OrderPair order;
    double alpha;
  };
  std::vector<Config> configs;
  for (double s1 : {8.0, 14.0, 20.0, 26.0, 32.0}) {
    for (double s2 : {4.0, s1 / 2.0, s1 - 2.0}) {
      const auto ch = ChannelParams::from_db(s1, s2);
      for (const auto& o : admissible_orders(ch)) {
        if (o.m1 < 2 || o.m2 < 2) continue;
        const double top = alpha_star(o.m1, o.m2);
        for (double f : {0.02, 0.25, 0.6, 1.0}) configs.push_back({ch, o, f * top});
      }
    }
  }
  MiOptions quad;
  const auto results = parallel_map(configs.size(), [&](std::size_t i) {
    const auto& c = configs[i];
    const auto e1 = mi_exact_tin(User::one, c.ch, c.alpha, c.order.m1, c.order.m2, quad);
    const auto e2 = mi_exact_tin(User::two, c.ch, c.alpha, c.order.m1, c.order.m2, quad);
    const double lb1 = mi_lb_user1(c.alpha, c.ch.snr1, c.order.m1, c.order.m2);
    const double lb2 = mi_lb_user2(c.alpha, c.ch.snr2, c.order.m2);
    const double margin = std::min(e1.value + e1.err_est - lb1, e2.value + e2.err_est - lb2);
    return std::make_pair(margin, std::max(e1.err_est, e2.err_est));
  });
  double min_margin = INFINITY;
  double max_err = 0.0;
  for (const auto& [m, e] : results) {
    min_margin = std::min(min_margin, m);
    max_err = std::max(max_err, e);
  }
  return {configs.size() >= 500 && min_margin >= 0.0 && max_err <= 1e-3,
          std::to_string(configs.size()) + " configs, min(exact + err - lb) " + fmt("%.4g", min_margin) +
              ", max quad err_est " + fmt("%.3g", max_err)};
}

Outcome theorem_certification() {
  MiOptions lb;
  lb.method = MiMethod::closed_form_lb;
  const auto grid = snr_scan(6.0, 40.0, 4.0, 1.0);
  std::string why;
  std::size_t checks = 0;

  const auto case1 = certify_case1(grid, lb);
  for (const auto& r : case1) {
    ++checks;
    if (!(r.delta1 < 1.188 && r.delta2 < 1.175)) why = "case-1 violation";
  }
  const auto case2 = certify_case2(grid, 64, lb);
  for (const auto& r : case2) {
    if (r.ch.snr2 > 4.0) {
      ++checks;
      if (!(r.delta2 < 0.839)) why = "case-2 user-2 violation";
    }
    if (r.alpha * r.ch.snr1 > 1.0) {
      ++checks;
      if (!(r.delta1 < 1.188)) why = "case-2 user-1 violation";
    }
  }
  const auto ts = parallel_map(grid.size(), [&](std::size_t i) {
    return certify_ts(ChannelParams::from_db(grid[i].snr1_db, grid[i].snr2_db), 16, lb);
  });
  for (const auto& reports : ts) {
    for (const auto& r : reports) {
      ++checks;
      if (!(r.max_total_gap1 < 2.960 && r.max_total_gap2 < 4.160)) why = "ts total violation";
      if (!r.corner_segment && r.ch.n1 >= 2 * (r.pair.a.m1 + 1) &&
          !(r.max_c_gap1 < 1.772 && r.max_c_gap2 < 2.985)) {
        why = "ts chord violation";
      }
    }
  }

  cli::RunConfig cfg;
  cfg.out_dir = scratch("gap_scan");
  std::ostringstream log;
  const int rc = cli::cmd_gap_scan(cfg, {}, log);
  if (rc != 0) why = "gap-scan exit code " + std::to_string(rc);
  return {why.empty(), std::to_string(grid.size()) + " SNR pairs, " + std::to_string(checks) +
                           " bound checks, gap-scan exit " + std::to_string(rc) + (why.empty() ? "" : ": " + why)};
}

Outcome fig5_crossover() {
  const auto ch = ChannelParams::from_db(20.0, 10.0);
  const auto alphas = uniform_alpha_grid(101);
  const auto rows = cli::fig5_rows(ch, alphas, {});
  double best = -INFINITY;
  double at = 0.0;
  for (const auto& r : rows) {
    const double excess = r.mi_33 - r.c2 - r.err_est;
    if (excess > best) {
      best = excess;
      at = r.alpha;
    }
  }
  return {best > 0.0, "max I(X2;Y2) - C2 - err_est for (3,3) = " + fmt("%.4f", best) + " at alpha " + fmt("%.3f", at)};
}

Outcome fig3_structure() {
  const auto ch = ChannelParams::from_db(22.0, 12.0);
  MiOptions quad;
  const auto region = build_achievable_region(ch, 64, quad);
  const auto summary = certify_theorem1(ch, region, 256);

  double worst = 0.0;
  std::size_t points = 0;
  for (int m1 = 1; m1 * ch.n2 <= ch.n1; ++m1) {
    const OrderPair o{m1, ch.n2};
    auto alphas = alpha_grid(ch, o, 64);
    alphas.insert(alphas.begin(), 0.0);
    for (double a : alphas) {
      const auto p = rate_point(ch, o, a, quad);
      worst = std::max({worst, c1(a, ch.snr1) - p.r1 + p.err_est, c2(a, ch.snr2) - p.r2 + p.err_est});
      ++points;
    }
  }
  return {summary.pass && worst <= 1.2,
          "theorem check " + std::string(summary.pass ? "pass" : "FAIL") + " (worst gaps " +
              fmt("%.3f", summary.worst_gap1) + ", " + fmt("%.3f", summary.worst_gap2) + "), M2=N2 frontier worst " +
              fmt("%.3f", worst) + " bits over " + std::to_string(points) + " points"};
}

Outcome appendix_gain() {
  double prev = -INFINITY;
  bool increasing = true;
  std::string values;
  double last = 0.0;
  for (int k = 2; k <= 6; ++k) {
    last = relative_gain(std::pow(10.0, k), 1.0);
    increasing = increasing && last > prev;
    prev = last;
    values += (k > 2 ? ", " : "") + fmt("%.3f", last);
  }
  return {increasing && last > 5.0, "g(10^k, 1), k=2..6: " + values};
}

Outcome determinism() {
  const auto base = scratch("determinism");
  std::ostringstream log;
  for (const char* run : {"a", "b"}) {
    cli::RunConfig cfg;
    cfg.out_dir = base / run;
    cli::cmd_region(cfg, log);
    cli::cmd_gap_scan(cfg, {}, log);
    cfg.out_dir = base / (std::string(run) + "_mc");
    cfg.mi_method = MiMethod::monte_carlo;
    cfg.mc_samples = 20000;
    cfg.alpha_grid_size = 16;
    cli::cmd_region(cfg, log);
  }
  std::size_t compared = 0;
  std::string differ;
  for (const auto& [dir_a, dir_b] : {std::pair{"a", "b"}, std::pair{"a_mc", "b_mc"}}) {
    for (const auto& entry : std::filesystem::directory_iterator(base / dir_a)) {
      const auto other = base / dir_b / entry.path().filename();
      ++compared;
      if (slurp(entry.path()) != slurp(other)) differ += " " + entry.path().filename().string();
    }
  }
  return {differ.empty() && compared == 9,
          std::to_string(compared) + " files compared" + (differ.empty() ? ", all identical" : ", differ:" + differ)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "constants", 1.0, constants},
      {2, "min-distance oracle", 30.0, lemma1_oracle},
      {3, "bound dominance", 300.0, bound_dominance},
      {4, "constant-gap certification", 600.0, theorem_certification},
      {5, "user-2 crossover at 20/10 dB", 60.0, fig5_crossover},
      {6, "region vs capacity at 22/12 dB", 120.0, fig3_structure},
      {7, "relative gain growth", 1.0, appendix_gain},
      {8, "determinism", 600.0, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = o.ok && in_time;
    failures += pass ? 0 : 1;
    std::printf("[%s] criterion %d (%s): %s; %.2f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.limit_s, in_time ? "" : " TIMEOUT");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
