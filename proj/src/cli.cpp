#include "degmlmc/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "degmlmc/parallel.hpp"
#include "degmlmc/sampling.hpp"

namespace degmlmc {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const ExperimentConfig& cfg, const std::string& name, fs::path& path) {
  fs::create_directories(cfg.output_dir);
  path = fs::path(cfg.output_dir) / name;
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  return os;
}

std::vector<std::string> header_for(const ExperimentConfig& cfg, const std::string& provenance) {
  std::vector<std::string> lines{provenance};
  std::ostringstream os;
  os << std::setprecision(17) << "T=" << cfg.T << " nu=" << cfg.model.params.nu;
  lines.push_back(os.str());
  return lines;
}

// Parameters at the center of the model's box (p = 2 for the exponent model).
std::vector<double> central_parameters(const RandomDataModel& model) {
  std::vector<double> p;
  for (const auto& [lo, hi] : model.parameter_box()) p.push_back(0.5 * (lo + hi));
  return p;
}

int cmd_solve(const ExperimentConfig& cfg, std::ostream& out) {
  const auto grid = single_level_grid(cfg);
  const auto params = central_parameters(cfg.model);
  const auto sample = build_sample(cfg.model, params);
  const auto res = run(sample.u0, sample.flux, grid, cfg.scheme, cfg.T);
  fs::path path;
  auto os = open_output(cfg, "field.dat", path);
  auto header = header_for(cfg, cfg.model.describe() + " " + cfg.scheme.describe());
  header.push_back("flux " + sample.flux.descriptor);
  write_field(os, res.field, nullptr, header);
  out << "wrote " << path.string() << " (" << grid.n_cells() << " cells, "
      << res.work.cell_updates << " cell updates)\n";
  return 0;
}

int cmd_mc(const ExperimentConfig& cfg, std::ostream& out) {
  const auto grid = single_level_grid(cfg);
  const auto res = mc_estimate(cfg.model, grid, cfg.scheme, cfg.T, cfg.M, cfg.seed,
                               resolve_workers(cfg.workers));
  fs::path path;
  auto os = open_output(cfg, "mc_mean.dat", path);
  auto header = header_for(cfg, res.provenance);
  header.push_back("M=" + std::to_string(cfg.M));
  write_field(os, res.mean, &res.std, header);
  out << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_mlmc(const ExperimentConfig& cfg, std::ostream& out) {
  const auto h = make_hierarchy(cfg, cfg.L_max);
  const auto res = mlmc_run(cfg.model, h, cfg.scheme, cfg.T, cfg.seed, resolve_workers(cfg.workers));
  fs::path mean_path;
  fs::path level_path;
  {
    auto os = open_output(cfg, "mlmc_mean.dat", mean_path);
    auto header = header_for(cfg, res.mean.provenance);
    std::string m = "M_l=";
    for (std::size_t l = 0; l < res.mean.m_samples.size(); ++l)
      m += (l ? "," : "") + std::to_string(res.mean.m_samples[l]);
    header.push_back(m);
    const auto var = assemble_variance(res);
    header.push_back("variance_flagged_cells=" + std::to_string(var.flagged));
    write_field(os, res.mean.mean, &res.mean.std, header);
  }
  {
    auto os = open_output(cfg, "mlmc_levels.csv", level_path);
    write_level_diagnostics(os, res.diagnostics, cfg.timing);
  }
  out << "wrote " << mean_path.string() << " and " << level_path.string() << "\n";
  return 0;
}

int cmd_table(ExperimentConfig cfg, std::ostream& out) {
  cfg.workers = resolve_workers(cfg.workers);
  fs::path path;
  auto os = open_output(cfg, "table.csv", path);
  const auto report = convergence_study(cfg, &os);
  out << std::setprecision(4) << "wrote " << path.string() << " (rate vs dx " << report.rate_dx
      << ")\n";
  return 0;
}

int cmd_validate(const ExperimentConfig& cfg, std::ostream& out) {
  constexpr double tol = 1e-8;
  const auto grid = single_level_grid(cfg);
  auto scheme = cfg.scheme;
  scheme.newton_tol_factor = std::min(scheme.newton_tol_factor, 1e-8);

  std::vector<std::pair<std::string, DataSample>> cases;
  cases.emplace_back("central", build_sample(cfg.model, central_parameters(cfg.model)));
  if (cfg.model.parameter_dimension() > 0) {
    auto stream = stream_for(cfg.seed, 0, 0);
    cases.emplace_back("random", draw_sample(cfg.model, stream));
  }

  bool ok = true;
  for (const auto& [name, sample] : cases) {
    const double len = sample.u0.x_max - sample.u0.x_min;
    const auto v0 = periodic_shift(sample.u0, len / 8.0);
    const auto rep = check_scheme_invariants(sample.u0, v0, sample.flux, grid, scheme, cfg.T, tol);
    out << std::setprecision(3) << name << " [" << sample.flux.descriptor << "]\n"
        << "  l1_stable        " << (rep.l1_stable ? "PASS" : "FAIL") << "  worst excess "
        << rep.worst_l1_excess << "\n"
        << "  max_principle    " << (rep.max_principle ? "PASS" : "FAIL") << "  worst excess "
        << rep.worst_range_excess << "\n"
        << "  bv_diminishing   " << (rep.bv_diminishing ? "PASS" : "FAIL") << "  worst excess "
        << rep.worst_bv_excess << "\n"
        << "  lipschitz_time   " << (rep.lipschitz_in_time ? "PASS" : "FAIL") << "  worst excess "
        << rep.worst_lipschitz_excess << "\n"
        << "  l1_contraction   " << (rep.l1_contraction ? "PASS" : "FAIL") << "  worst excess "
        << rep.worst_contraction_excess << "\n";
    ok = ok && rep.all();
  }
  if (!ok) throw Error("invariant check failed");
  return 0;
}

}  // namespace

GridSpec single_level_grid(const ExperimentConfig& cfg) {
  const auto data = initial_data(cfg.model.initial);
  const double cells = (data.x_max - data.x_min) / cfg.dx;
  const double n = std::round(cells);
  if (n < 2.0 || std::abs(cells - n) > 1e-9 * n)
    throw std::invalid_argument("dx does not divide the domain length");
  return GridSpec(data.x_min, data.x_max, static_cast<std::size_t>(n));
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite difference MC/MLMC solver for degenerate convection-diffusion equations",
               "degmlmc"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("-c,--config", config_path, "INI config file with [model] [scheme] [hierarchy] [run]");

  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_options;
  for (const auto& section : config_sections())
    for (const auto& key : config_keys(section))
      flag_options[key] = app.add_option("--" + key, flag_values[key], "[" + section + "] " + key);

  app.add_subcommand("solve", "single deterministic run at the central parameters, writes field.dat");
  app.add_subcommand("mc", "Monte Carlo estimate at dx with M samples, writes mc_mean.dat");
  app.add_subcommand("mlmc", "MLMC estimate, writes mlmc_mean.dat and mlmc_levels.csv");
  app.add_subcommand("table", "convergence study over L = 0..L, writes table.csv");
  app.add_subcommand("validate", "scheme invariant checks at dx");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    ExperimentConfig cfg;
    ConfigMap entries;
    if (!config_path.empty()) entries = read_config_file(config_path);
    for (const auto& [key, opt] : flag_options)
      if (opt->count() > 0) entries[key] = ConfigEntry{flag_values[key], "--" + key};
    apply_config(entries, cfg);
    cfg.validate();

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "solve") return cmd_solve(cfg, out);
    if (cmd == "mc") return cmd_mc(cfg, out);
    if (cmd == "mlmc") return cmd_mlmc(cfg, out);
    if (cmd == "table") return cmd_table(cfg, out);
    return cmd_validate(cfg, out);
  } catch (const std::exception& e) {
    err << "degmlmc: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace degmlmc
