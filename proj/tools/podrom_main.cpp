#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "podrom/experiments.hpp"

namespace {

using namespace podrom;

struct CliOverrides {
  std::string config_file;
  std::vector<std::string> dt;
  std::vector<int> r;
  std::optional<bool> dq;
  std::string space;
  std::string h;
  std::optional<int> k;
  std::optional<double> t_final;
  std::optional<double> rom_t;
  std::optional<double> nu;
  std::optional<double> alpha;
  std::optional<double> delta;
  std::optional<int> r_proj;
  std::string dt_rom;
  std::string ic;
  std::string cn_forcing;
  std::optional<unsigned long long> seed;
  std::string out;
  std::string format;
};

void add_common_options(CLI::App* cmd, CliOverrides& opt) {
  cmd->add_option("--config", opt.config_file, "flat key=value config file");
  cmd->add_option("--dt", opt.dt, "time step list (accepts fractions like 1/16)");
  cmd->add_option("--r", opt.r, "rank list");
  auto* dq_flag = cmd->add_flag("--dq", "run only the DQ case");
  auto* nodq_flag = cmd->add_flag("--no-dq", "run only the noDQ case");
  dq_flag->excludes(nodq_flag);
  cmd->parse_complete_callback([&opt, dq_flag, nodq_flag]() {
    if (dq_flag->count() > 0) opt.dq = true;
    if (nodq_flag->count() > 0) opt.dq = false;
  });
  cmd->add_option("--space", opt.space, "POD inner product: l2 or h1");
  cmd->add_option("--h", opt.h, "mesh width (accepts fractions like 1/4096)");
  cmd->add_option("--k", opt.k, "spatial frequency rate");
  cmd->add_option("--T", opt.t_final, "snapshot horizon");
  cmd->add_option("--rom-T", opt.rom_t, "ROM error horizon (cex2)");
  cmd->add_option("--nu", opt.nu, "diffusion coefficient");
  cmd->add_option("--alpha", opt.alpha, "cex2 decay rate");
  cmd->add_option("--delta", opt.delta, "cex2 decay scale");
  cmd->add_option("--r-proj", opt.r_proj, "cex2 projection-study rank");
  cmd->add_option("--dt-rom", opt.dt_rom, "cex2 ROM-study time step");
  cmd->add_option("--ic", opt.ic, "initial projection: l2, ritz, or default");
  cmd->add_option("--cn-forcing", opt.cn_forcing,
                  "Crank-Nicolson forcing: average or midpoint");
  cmd->add_option("--seed", opt.seed, "random seed");
  cmd->add_option("--out", opt.out, "output directory (default: stdout)");
  cmd->add_option("--format", opt.format, "csv or md");
}

StudyConfig build_config(Example example, const CliOverrides& opt) {
  StudyConfig cfg = default_config(example);
  if (!opt.config_file.empty()) cfg = load_config_file(opt.config_file, cfg);
  cfg.example = example;  // the subcommand wins over the file
  if (!opt.dt.empty()) {
    cfg.dt_list.clear();
    for (const auto& item : opt.dt) cfg.dt_list.push_back(parse_number(item));
  }
  if (!opt.r.empty()) cfg.r_list = opt.r;
  if (opt.dq) cfg.dq = *opt.dq;
  if (!opt.space.empty()) apply_config_entry(cfg, "space", opt.space);
  if (!opt.h.empty()) cfg.h = parse_number(opt.h);
  if (opt.k) cfg.k = *opt.k;
  if (opt.t_final) cfg.T = *opt.t_final;
  if (opt.rom_t) cfg.rom_T = *opt.rom_t;
  if (opt.nu) cfg.nu = *opt.nu;
  if (opt.alpha) cfg.alpha = *opt.alpha;
  if (opt.delta) cfg.delta = *opt.delta;
  if (opt.r_proj) cfg.r_proj = *opt.r_proj;
  if (!opt.dt_rom.empty()) cfg.dt_rom = parse_number(opt.dt_rom);
  if (!opt.ic.empty()) apply_config_entry(cfg, "ic_kind", opt.ic);
  if (!opt.cn_forcing.empty()) apply_config_entry(cfg, "cn_forcing", opt.cn_forcing);
  if (opt.seed) cfg.seed = *opt.seed;
  if (!opt.out.empty()) cfg.output = opt.out;
  if (!opt.format.empty()) apply_config_entry(cfg, "format", opt.format);
  return cfg;
}

int run_export_basis(const CliOverrides& opt, Example example) {
  StudyConfig cfg = build_config(example, opt);
  validate_config(cfg);
  const Mesh1D mesh = build_mesh(static_cast<int>(std::round(1.0 / cfg.h)));
  const double dt = cfg.dt_list.empty() ? cfg.T / 16 : cfg.dt_list.front();
  const int n = static_cast<int>(std::round(cfg.T / dt));
  const ManufacturedSolution sol =
      example == Example::Cex1 ? cex1({cfg.k, cfg.nu})
                               : cex2({cfg.k, cfg.alpha, cfg.delta, cfg.nu}, dt);
  const bool dq = cfg.dq.value_or(false);
  const SnapshotSet snaps = generate_snapshots(sol, mesh, cfg.T, n, dq);
  const PodBasis basis = compute_pod(snaps, cfg.space);
  if (cfg.output.empty()) {
    write_basis_csv(basis, std::cout);
  } else {
    std::ofstream out(cfg.output);
    if (!out) throw std::runtime_error("cannot write to " + cfg.output);
    write_basis_csv(basis, out);
  }
  return 0;
}

int run_export_trajectory(const CliOverrides& opt, Example example) {
  StudyConfig cfg = build_config(example, opt);
  validate_config(cfg);
  const Mesh1D mesh = build_mesh(static_cast<int>(std::round(1.0 / cfg.h)));
  const double dt = cfg.dt_list.empty() ? cfg.T / 16 : cfg.dt_list.front();
  const int n = static_cast<int>(std::round(cfg.T / dt));
  const ManufacturedSolution sol =
      example == Example::Cex1 ? cex1({cfg.k, cfg.nu})
                               : cex2({cfg.k, cfg.alpha, cfg.delta, cfg.nu}, dt);
  const bool dq = cfg.dq.value_or(false);
  const SnapshotSet snaps = generate_snapshots(sol, mesh, cfg.T, n, dq);
  const PodBasis basis = compute_pod(snaps, cfg.space);
  const int r = cfg.r_list.empty() ? basis.rank : cfg.r_list.front();
  const RomModel model = assemble_rom(basis, r, cfg.nu, sol, mesh);
  const NodalField u0 = interpolate(sol.u0, mesh);
  const InitialProjection ic =
      cfg.ic_kind ? *cfg.ic_kind
                  : (dq ? InitialProjection::Ritz : InitialProjection::L2);
  const Eigen::VectorXd a0 = rom_initial_condition(basis, r, u0, ic);
  const double horizon = cfg.rom_T > 0.0 ? cfg.rom_T : cfg.T;
  const int rom_steps = static_cast<int>(std::round(horizon / dt));
  const RomTrajectory traj = cn_solve(model, a0, dt, rom_steps);
  if (cfg.output.empty()) {
    write_trajectory_csv(traj, std::cout);
  } else {
    std::ofstream out(cfg.output);
    if (!out) throw std::runtime_error("cannot write to " + cfg.output);
    write_trajectory_csv(traj, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"POD reduced-order modeling studies for the 1D heat equation"};
  app.set_help_flag("--help", "print help");  // frees -h for the --h mesh option
  app.require_subcommand(1);

  CliOverrides opt;
  std::string example_name = "cex1";

  auto* study = app.add_subcommand("study", "reproduce a numerical study");
  study->require_subcommand(1);
  auto* cex1_proj = study->add_subcommand(
      "cex1-proj", "pointwise projection errors and scaling factors");
  auto* cex1_rom = study->add_subcommand("cex1-rom", "ROM error ratios over dt");
  auto* cex2_study = study->add_subcommand(
      "cex2", "projection scaling factors and ROM error ratios");
  add_common_options(cex1_proj, opt);
  add_common_options(cex1_rom, opt);
  add_common_options(cex2_study, opt);

  auto* props = app.add_subcommand("props", "run the property suite");
  add_common_options(props, opt);

  auto* basis_cmd = app.add_subcommand("basis", "export a POD basis as CSV");
  basis_cmd->add_option("--example", example_name, "cex1 or cex2");
  add_common_options(basis_cmd, opt);

  auto* rom_cmd = app.add_subcommand("rom", "reduced-order model utilities");
  auto* rom_run = rom_cmd->add_subcommand("run", "run the ROM, export trajectory CSV");
  rom_run->add_option("--example", example_name, "cex1 or cex2");
  add_common_options(rom_run, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cex1_proj->parsed()) {
      const StudyConfig cfg = build_config(Example::Cex1, opt);
      write_reports(study_cex1_projection(cfg), cfg.output, cfg.format);
      return 0;
    }
    if (cex1_rom->parsed()) {
      const StudyConfig cfg = build_config(Example::Cex1, opt);
      write_reports(study_cex1_rom(cfg), cfg.output, cfg.format);
      return 0;
    }
    if (cex2_study->parsed()) {
      const StudyConfig cfg = build_config(Example::Cex2, opt);
      write_reports(study_cex2(cfg), cfg.output, cfg.format);
      return 0;
    }
    if (props->parsed()) {
      const StudyConfig cfg = build_config(Example::Cex1, opt);
      const TableReport report = run_property_suite(cfg);
      write_reports({report}, cfg.output, cfg.format);
      return property_suite_passed(report) ? 0 : 3;
    }
    const Example example = example_name == "cex2" ? Example::Cex2 : Example::Cex1;
    if (basis_cmd->parsed()) return run_export_basis(opt, example);
    if (rom_cmd->parsed()) return run_export_trajectory(opt, example);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
