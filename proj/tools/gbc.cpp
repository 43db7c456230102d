#include <exception>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "gbc/commands.hpp"

int main(int argc, char** argv) {
  using namespace gbc;

  CLI::App app{"Superposition PAM rate regions and constant-gap certification for the two-user Gaussian BC", "gbc"};
  app.set_config("--config", "", "Flat key=value file mirroring the long flags (e.g. snr1-db=20)");
  app.fallthrough();
  app.require_subcommand(1);

  cli::RunConfig config;
  double snr1_db = 0.0;
  double snr2_db = 0.0;
  std::string method;
  std::string format = "csv";
  std::string out_dir = ".";

  const std::map<std::string, MiMethod> method_map{
      {"quad", MiMethod::quadrature}, {"mc", MiMethod::monte_carlo}, {"lb", MiMethod::closed_form_lb}};

  auto* opt_snr1 = app.add_option("--snr1-db", snr1_db, "Strong-user SNR in dB");
  auto* opt_snr2 = app.add_option("--snr2-db", snr2_db, "Weak-user SNR in dB");
  app.add_option("--alpha-grid", config.alpha_grid_size, "Alpha grid size")->capture_default_str()->check(CLI::Range(2, 1 << 20));
  app.add_option("--lambda-grid", config.lambda_grid_size, "Time-sharing lambda grid size")
      ->capture_default_str()
      ->check(CLI::Range(2, 1 << 20));
  app.add_option("--mi-method", method, "Mutual information method")->check(CLI::IsMember({"quad", "mc", "lb"}));
  app.add_option("--quad-order", config.quad_order, "Gauss-Hermite order")->capture_default_str()->check(CLI::Range(2, 4096));
  app.add_option("--mc-samples", config.mc_samples, "Monte Carlo samples")->capture_default_str();
  app.add_option("--seed", config.seed, "Base RNG seed")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--format", format, "Output format")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));

  auto* region = app.add_subcommand("region", "Achievable region, frontier and capacity boundary (default 22/12 dB)");
  auto* gap_scan = app.add_subcommand("gap-scan", "Certify the constant-gap bounds over an SNR grid");
  auto* fig5 = app.add_subcommand("fig5", "User-2 exact MI against C2(alpha) (default 20/10 dB)");
  auto* constants = app.add_subcommand("constants", "Recompute the certified gap constants");
  auto* mi = app.add_subcommand("mi", "Single-point mutual information query");

  cli::ScanRanges ranges;
  gap_scan->add_option("--snr1-lo-db", ranges.snr1_lo_db)->capture_default_str();
  gap_scan->add_option("--snr1-hi-db", ranges.snr1_hi_db)->capture_default_str();
  gap_scan->add_option("--snr2-lo-db", ranges.snr2_lo_db)->capture_default_str();
  gap_scan->add_option("--step-db", ranges.step_db)->capture_default_str();
  gap_scan->add_option("--boundary-grid", ranges.boundary_grid_size, "Capacity-boundary samples per SNR pair")
      ->capture_default_str()
      ->check(CLI::Range(2, 1 << 20));
  gap_scan->add_option("--bound-scale", ranges.bound_scale, "Multiply every certified bound (test hook)")
      ->capture_default_str();

  cli::MiQuery query;
  mi->add_option("--user", query.user)->capture_default_str()->check(CLI::IsMember({1, 2}));
  mi->add_option("--m1", query.m1)->capture_default_str();
  mi->add_option("--m2", query.m2)->capture_default_str();
  mi->add_option("--alpha", query.alpha)->capture_default_str()->check(CLI::Range(0.0, 1.0));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*opt_snr1) config.snr1_db = snr1_db;
    if (*opt_snr2) config.snr2_db = snr2_db;
    if (!method.empty()) config.mi_method = method_map.at(method);
    config.format = io::parse_output_format(format);
    config.out_dir = out_dir;

    if (*region) return cli::cmd_region(config, std::cout);
    if (*gap_scan) return cli::cmd_gap_scan(config, ranges, std::cout);
    if (*fig5) return cli::cmd_fig5(config, std::cout);
    if (*constants) return cli::cmd_constants(std::cout);
    if (*mi) return cli::cmd_mi(config, query, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
