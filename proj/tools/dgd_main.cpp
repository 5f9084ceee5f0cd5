// Command-line front end: gen-data, run, verify-lemmas, sweep.

#include <iostream>

#include <CLI11.hpp>

#include "dgd/experiment.hpp"

namespace {

struct SharedFlags {
  std::string problem = "ridge_ls";
  std::size_t m = 0;
  std::size_t d = 0;
  std::size_t iters = 0;
  std::string data;
  std::string out;
};

void add_problem_flags(CLI::App* cmd, SharedFlags& f, dgd::ExperimentConfig& cfg) {
  cmd->add_option("--problem", f.problem, "ridge_ls, logistic or pl_ls")->capture_default_str();
  cmd->add_option("--m", f.m, "rows (default 1000, pl_ls 6)");
  cmd->add_option("--d", f.d, "columns (default 10, pl_ls 15)");
  cmd->add_option("--seed", cfg.seed, "data seed")->capture_default_str();
  cmd->add_option("--mu", cfg.mu_reg, "ridge weight")->capture_default_str();
  cmd->add_option("--out", f.out, "output path")->required();
}

void add_run_flags(CLI::App* cmd, SharedFlags& f, dgd::ExperimentConfig& cfg) {
  add_problem_flags(cmd, f, cfg);
  cmd->add_option("--data", f.data, "dataset file to load instead of generating");
  cmd->add_option("--q", cfg.q, "Young's split parameter")->capture_default_str();
  cmd->add_option("--iters", f.iters, "iterations (default 200*tau)");
  cmd->add_option("--tol", cfg.tol, "reference minimizer gradient tolerance")
      ->capture_default_str();
  cmd->add_option("--x0", cfg.x0_fill, "value of every coordinate of x_0")
      ->capture_default_str();
}

void finish(const SharedFlags& f, dgd::ExperimentConfig& cfg) {
  cfg.problem = dgd::parse_problem_kind(f.problem);
  if (f.m) cfg.m = f.m;
  if (f.d) cfg.d = f.d;
  if (f.iters) cfg.max_iters = f.iters;
  if (!f.data.empty()) cfg.data = f.data;
  cfg.out = f.out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delayed gradient descent runs with convergence-bound verification"};
  app.require_subcommand(1);

  SharedFlags flags;
  dgd::ExperimentConfig cfg;
  dgd::LemmaConfig lemma;
  dgd::SweepConfig sweep;
  std::string lemma_out;

  auto* gen = app.add_subcommand("gen-data", "generate a seeded dataset file");
  add_problem_flags(gen, flags, cfg);

  auto* run = app.add_subcommand("run", "run one experiment, write the trace CSV and reports");
  add_run_flags(run, flags, cfg);
  run->add_option("--tau", cfg.tau, "delay")->capture_default_str();
  run->add_option("--eta", cfg.eta_spec, "step size or expression, e.g. 0.6/(L*tau)")
      ->capture_default_str();

  auto* lem = app.add_subcommand("verify-lemmas", "check the supporting inequalities");
  lem->add_option("--j-half", lemma.j_half, "override J for n = 1/2");
  lem->add_option("--grid-step", lemma.x_grid_step, "x grid step")->capture_default_str();
  lem->add_option("--seed", lemma.seed, "random instance seed")->capture_default_str();
  lem->add_option("--instances", lemma.instances, "random recursion instances")
      ->capture_default_str();
  lem->add_option("--out", lemma_out, "key-value report path");

  auto* sw = app.add_subcommand("sweep", "run a (tau, eta) grid and write a summary CSV");
  add_run_flags(sw, flags, cfg);
  sw->add_option("--taus", sweep.taus, "comma-separated delays")->delimiter(',')->required();
  sw->add_option("--etas", sweep.etas, "comma-separated step expressions")
      ->delimiter(',')
      ->required();
  sw->add_option("--tail", sweep.tail_fraction, "tail fraction for the slope fit")
      ->capture_default_str();
  sw->add_option("--threads", sweep.threads, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dgd::kExitConfigError;
  }

  try {
    if (*lem) {
      if (!lemma_out.empty()) lemma.out = lemma_out;
      return dgd::cmd_verify_lemmas(lemma, std::cout);
    }
    finish(flags, cfg);
    if (*gen) return dgd::cmd_gen_data(cfg, std::cout);
    if (*run) return dgd::cmd_run(cfg, std::cout);
    sweep.base = cfg;
    return dgd::cmd_sweep(sweep, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dgd::kExitConfigError;
  }
}
