#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dgd/csv_trace.hpp"
#include "dgd/dataset.hpp"
#include "dgd/report.hpp"
#include "dgd/verify.hpp"

namespace dgd {

/// Exit codes of the command layer.
inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfigError = 2;

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::ridge_ls;
  std::optional<std::size_t> m;  // default 1000 (pl_ls: 6)
  std::optional<std::size_t> d;  // default 10 (pl_ls: 15)
  std::uint64_t seed = 42;
  std::size_t tau = 5;
  std::string eta_spec = "max_step";
  double q = 1.0;
  std::optional<std::size_t> max_iters;  // default 200 tau (tau = 0: 200)
  double tol = 1e-10;
  double mu_reg = 0.1;
  double x0_fill = 0.0;
  std::optional<std::filesystem::path> data;  // load instead of generating
  std::filesystem::path out;

  std::size_t rows() const;
  std::size_t cols() const;
  std::size_t iterations() const;
};

/// Loads config.data if set (its problem kind wins), else generates.
Dataset load_or_generate(const ExperimentConfig& config);

struct RunOutcome {
  CsvTrace csv;
  ProblemConstants constants;
  double eta = 0.0;
  double max_step = 0.0;  // NaN when no step limit applies
  bool admissible = false;
  LogErrorMetrics metrics;  // E_t from t = 0, e_t from t = tau
  /// Theorem checks and monitors; they decide the exit code.
  std::vector<ViolationReport> reports;
  /// Informational probes (gap monotonicity); never affect the exit code.
  std::vector<ViolationReport> probes;

  int exit_code() const;
};

/// Runs the delayed iteration on the dataset from x_0 = x0_fill * 1 and
/// checks every applicable bound.
RunOutcome run_experiment(const Dataset& dataset, const ExperimentConfig& config);

/// Writes the dataset to config.out.
int cmd_gen_data(const ExperimentConfig& config, std::ostream& log);

/// Writes the trace CSV to config.out and the key-value reports next to it
/// (config.out + ".report").
int cmd_run(const ExperimentConfig& config, std::ostream& log);

struct LemmaConfig {
  std::optional<double> j_half;  // replaces J_{1/2} in the sweep
  double x_grid_step = 1e-3;
  std::uint64_t seed = 42;
  std::size_t instances = 1000;
  std::size_t condition_samples = 100000;
  std::optional<std::filesystem::path> out;
};

std::vector<ViolationReport> verify_lemmas(const LemmaConfig& config);
int cmd_verify_lemmas(const LemmaConfig& config, std::ostream& log);

struct SweepConfig {
  ExperimentConfig base;
  std::vector<std::size_t> taus;
  std::vector<std::string> etas;
  double tail_fraction = 0.5;
  std::size_t threads = 0;  // 0 = hardware concurrency
};

struct SweepRow {
  std::size_t tau = 0;
  std::string eta_spec;
  double eta = 0.0;
  bool admissible = false;
  std::string metric;
  double slope = 0.0;
  std::optional<double> r_squared;
  std::size_t tail_points = 0;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string error;
};

/// One row per (tau, eta) in grid order. Cells run in parallel; a failing
/// cell records its error and the sweep continues. Throws
/// std::invalid_argument for an empty grid.
std::vector<SweepRow> run_sweep(const SweepConfig& config);
std::string format_sweep_csv(const std::vector<SweepRow>& rows);

/// Writes the summary CSV to base.out. Exit code 2 if any cell failed, else
/// 1 if any cell reported a violation, else 0.
int cmd_sweep(const SweepConfig& config, std::ostream& log);

}  // namespace dgd
