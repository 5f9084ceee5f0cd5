#include "dgd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dgd/eta_expression.hpp"
#include "dgd/text_format.hpp"

namespace dgd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_out(const std::filesystem::path& out, const char* cmd) {
  if (out.empty()) throw std::invalid_argument(std::string(cmd) + ": --out is required");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

int exit_code_of(const std::vector<ViolationReport>& reports) {
  const bool ok = std::all_of(reports.begin(), reports.end(),
                              [](const ViolationReport& r) { return r.passed(); });
  return ok ? kExitPass : kExitViolation;
}

std::string csv_cell(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

std::size_t ExperimentConfig::rows() const {
  return m.value_or(problem == ProblemKind::pl_ls ? 6 : 1000);
}

std::size_t ExperimentConfig::cols() const {
  return d.value_or(problem == ProblemKind::pl_ls ? 15 : 10);
}

std::size_t ExperimentConfig::iterations() const {
  return max_iters.value_or(200 * std::max<std::size_t>(tau, 1));
}

Dataset load_or_generate(const ExperimentConfig& config) {
  if (config.data) return load_dataset(*config.data);
  return generate_dataset(config.problem, config.rows(), config.cols(), config.seed,
                          config.mu_reg);
}

int RunOutcome::exit_code() const { return exit_code_of(reports); }

RunOutcome run_experiment(const Dataset& dataset, const ExperimentConfig& config) {
  if (config.tau > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("tau is too large");
  }
  if (!(config.q > 0.0)) throw std::invalid_argument("q must be positive");
  const GradientOracle& f = oracle_of(dataset.problem);
  const ProblemKind kind = kind_of(dataset.problem);
  const std::size_t tau = config.tau;
  const std::size_t iters = config.iterations();

  RunOutcome out;
  out.constants = constants_of(dataset.problem, config.tol);
  const ProblemConstants& k = out.constants;

  std::optional<StepSizePolicy> policy;
  if (k.mu > 0.0 && tau >= 1) {
    policy.emplace(k.L, k.mu, k.zeta, static_cast<std::uint32_t>(tau), config.q);
  }
  if (policy) {
    out.max_step = max_step_strongly_convex(*policy);
  } else if (k.mu == 0.0 && k.zeta > 0.0) {
    out.max_step = pl_step_limit(k.L, k.zeta, tau);
  } else {
    out.max_step = kNaN;
  }
  const EtaContext ctx{k.L, static_cast<double>(tau), k.mu, k.zeta, config.q, out.max_step};
  out.eta = evaluate_eta(config.eta_spec, ctx);

  const Vector x0 = Vector::Constant(static_cast<Eigen::Index>(f.dimension()), config.x0_fill);
  RunTrace trace = run(f, x0, out.eta, tau, iters, k.x_star, k.f_star);
  TraceMeta& meta = trace.meta;
  meta.problem = std::string(to_string(kind));
  meta.seed = dataset.seed;
  meta.x_star_radius = k.x_star_radius;
  meta.f_star_radius = k.f_star_radius;
  meta.extras["eta_spec"] = config.eta_spec;
  meta.extras["L"] = format_double(k.L);
  meta.extras["mu"] = format_double(k.mu);
  meta.extras["zeta"] = format_double(k.zeta);
  meta.extras["q"] = format_double(config.q);
  meta.extras["max_step"] = format_double(out.max_step);
  meta.extras["max_iters"] = std::to_string(iters);
  meta.extras["x0"] = format_double(config.x0_fill);
  meta.extras["tol"] = format_double(config.tol);
  meta.extras["stopping"] = "gradient_norm";
  meta.extras["f_star"] = format_double(k.f_star);

  if (policy) {
    out.admissible = strongly_convex_admissible(*policy, out.eta);
    out.reports.push_back(check_thm15(trace, *policy, out.eta));
    out.reports.push_back(check_thm21(trace, *policy, out.eta));
    out.reports.push_back(monitor_prop21(trace, *policy, out.eta));
  } else {
    const std::string why = k.mu > 0.0 ? "requires a delay tau >= 1" : "not strongly convex";
    out.admissible = k.mu == 0.0 && k.zeta > 0.0 && out.eta <= out.max_step;
    out.reports.push_back(not_applicable("thm15_distance", why));
    out.reports.push_back(not_applicable("thm21_shadow", why));
    out.reports.push_back(not_applicable("prop21_step", why));
  }
  out.reports.push_back(check_deviation(trace, out.eta));
  out.reports.push_back(check_pl(trace, k.L, k.zeta, out.eta, tau));
  if (kind == ProblemKind::pl_ls) {
    out.probes.push_back(probe_gap_increases(trace, tau, "gap_monotone"));
  }
  meta.extras["eta_admissible"] = out.admissible ? "true" : "false";

  try {
    out.metrics = log_error_metrics(trace, tau, resolution_floors(trace));
  } catch (const std::domain_error&) {
    out.metrics = LogErrorMetrics{};  // x_0 = x_*: no log error
    out.metrics.anchor = tau;
  }
  std::vector<double> bound = kind == ProblemKind::pl_ls
                                  ? pl_envelope_column(trace, k.L, k.zeta, out.eta, tau)
                              : policy ? thm15_bound_column(trace, *policy, out.eta)
                                       : std::vector<double>(trace.rows.size(), kNaN);
  out.csv = make_csv_trace(std::move(trace), out.metrics.log_dist, out.metrics.log_gap, tau,
                           std::move(bound));
  return out;
}

int cmd_gen_data(const ExperimentConfig& config, std::ostream& log) {
  require_out(config.out, "gen-data");
  const Dataset ds = generate_dataset(config.problem, config.rows(), config.cols(), config.seed,
                                      config.mu_reg);
  save_dataset(config.out, ds);
  const CurvatureBounds c = oracle_of(ds.problem).curvature();
  log << "wrote " << config.out.string() << ": " << to_string(config.problem)
      << " m=" << config.rows() << " d=" << config.cols() << " seed=" << config.seed
      << " L=" << format_double(c.L) << " mu=" << format_double(c.mu)
      << " zeta=" << format_double(c.zeta) << '\n';
  return kExitPass;
}

int cmd_run(const ExperimentConfig& config, std::ostream& log) {
  require_out(config.out, "run");
  const Dataset ds = load_or_generate(config);
  const RunOutcome o = run_experiment(ds, config);
  save_csv(config.out, o.csv);

  std::vector<ViolationReport> all = o.reports;
  all.insert(all.end(), o.probes.begin(), o.probes.end());
  std::ostringstream kv;
  kv << "run.problem=" << o.csv.trace.meta.problem << '\n'
     << "run.eta=" << format_double(o.eta) << '\n'
     << "run.max_step=" << format_double(o.max_step) << '\n'
     << "run.admissible=" << (o.admissible ? "true" : "false") << '\n'
     << "run.exit_code=" << o.exit_code() << '\n'
     << format_reports_kv(all);
  std::filesystem::path report_path = config.out;
  report_path += ".report";
  write_file(report_path, kv.str());

  log << "problem=" << o.csv.trace.meta.problem << " tau=" << config.tau
      << " eta=" << format_double(o.eta) << " max_step=" << format_double(o.max_step)
      << " admissible=" << (o.admissible ? "yes" : "no") << '\n'
      << format_reports_text(o.reports);
  if (!o.probes.empty()) log << "probes (informational):\n" << format_reports_text(o.probes);
  return o.exit_code();
}

std::vector<ViolationReport> verify_lemmas(const LemmaConfig& config) {
  std::vector<ViolationReport> out;

  const std::vector<HalfInteger> n_set = default_lemma21_n_set();
  JFunction j = j_constant;
  if (config.j_half) {
    const double jh = *config.j_half;
    j = [jh](HalfInteger n) { return n.twice_value() == 1 ? jh : j_constant(n); };
  }
  out.push_back(lemma21_sweep(n_set, config.x_grid_step, j));

  // The probes below are expected to behave a certain way; the report fails
  // when they do not.
  const Lemma21Tightness tight = lemma21_tightness(config.x_grid_step);
  ViolationReport tr;
  tr.id = "lemma21_tightness";
  tr.checked = 2;
  tr.worst_margin = kNaN;
  if (tight.half_with_j125.violations.empty()) {
    tr.violations.push_back(Violation{1, 1.25, j_constant(HalfInteger(1)), 0.0});
    tr.note = "J = 1.25 at n = 1/2 produced no violation";
  }
  const double gap = std::abs(tight.n1_endpoint_lhs - tight.n1_endpoint_rhs);
  if (gap > 4.0 * std::numeric_limits<double>::epsilon() * tight.n1_endpoint_rhs) {
    tr.violations.push_back(Violation{2, tight.n1_endpoint_lhs, tight.n1_endpoint_rhs, gap});
    tr.note = "n = 1, x = 0.2 is not an equality";
  }
  tr.status = tr.violations.empty() ? CheckStatus::pass : CheckStatus::fail;
  out.push_back(std::move(tr));

  ViolationReport cr;
  cr.id = "condition221_shortcut";
  cr.worst_margin = kNaN;
  Rng rng(config.seed, 4);
  for (std::size_t i = 0; i < config.condition_samples; ++i) {
    const std::size_t tau = 1 + static_cast<std::size_t>(rng.uniform() * 8.0);
    const double c = rng.uniform();
    const double Q = 1.0 - rng.uniform();
    double sum = 0.0;
    for (std::size_t k = 0; k < tau; ++k) sum += std::pow(c, static_cast<double>(k));
    const double delta = 2.0 * rng.uniform() * std::pow(c, static_cast<double>(tau)) * Q / sum;
    ++cr.checked;
    if (condition_221(c, delta, Q, tau) != condition_221_shortcut(c, delta, Q, tau)) {
      cr.violations.push_back(Violation{i, delta, 0.0, 0.0});
    }
  }
  cr.status = cr.violations.empty() ? CheckStatus::pass : CheckStatus::fail;
  out.push_back(std::move(cr));

  Lemma22Battery battery = lemma22_battery(config.seed, config.instances);
  out.push_back(std::move(battery.decay));
  out.push_back(std::move(battery.expansion));
  return out;
}

int cmd_verify_lemmas(const LemmaConfig& config, std::ostream& log) {
  const std::vector<ViolationReport> reports = verify_lemmas(config);
  log << format_reports_text(reports);
  for (const ViolationReport& r : reports) {
    if (r.id == "lemma21" && !r.violations.empty()) {
      const Violation& v = r.violations.front();
      log << "lemma21 counterexample: n=" << format_double(0.5 * static_cast<double>(v.t))
          << " x=" << format_double(v.at) << " lhs=" << format_double(v.lhs)
          << " rhs=" << format_double(v.rhs) << '\n';
    }
  }
  if (config.out) write_file(*config.out, format_reports_kv(reports));
  return exit_code_of(reports);
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  if (config.taus.empty() || config.etas.empty()) {
    throw std::invalid_argument("sweep: the (tau, eta) grid is empty");
  }
  const Dataset ds = load_or_generate(config.base);
  const bool pl = kind_of(ds.problem) == ProblemKind::pl_ls;

  std::vector<SweepRow> rows;
  for (std::size_t tau : config.taus) {
    for (const std::string& eta : config.etas) {
      SweepRow r;
      r.tau = tau;
      r.eta_spec = eta;
      r.eta = kNaN;
      r.slope = kNaN;
      r.metric = pl ? "e_t" : "E_t";
      rows.push_back(std::move(r));
    }
  }

  auto cell = [&](SweepRow& row) {
    try {
      ExperimentConfig cfg = config.base;
      cfg.tau = row.tau;
      cfg.eta_spec = row.eta_spec;
      const RunOutcome o = run_experiment(ds, cfg);
      row.eta = o.eta;
      row.admissible = o.admissible;
      for (const ViolationReport& rep : o.reports) {
        row.checked += rep.checked;
        row.violations += rep.violations.size();
      }
      std::span<const double> series;
      if (pl) {
        series = o.metrics.log_gap;
      } else if (o.metrics.log_dist.size() > row.tau) {
        series = std::span<const double>(o.metrics.log_dist).subspan(row.tau);
      }
      const SlopeFit fit = slope_fit(series, config.tail_fraction);
      row.slope = fit.slope;
      row.r_squared = fit.r_squared;
      row.tail_points = fit.points;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  std::size_t workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, rows.size());
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) cell(rows[i]);
      });
    }
  }
  return rows;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "tau,eta_spec,eta,admissible,metric,slope,r_squared,tail_points,checked,violations,error\n";
  for (const SweepRow& r : rows) {
    out << r.tau << ',' << csv_cell(r.eta_spec) << ',' << format_double(r.eta) << ','
        << (r.admissible ? "true" : "false") << ',' << r.metric << ',' << format_double(r.slope)
        << ',' << format_double(r.r_squared.value_or(kNaN)) << ',' << r.tail_points << ','
        << r.checked << ',' << r.violations << ',' << csv_cell(r.error) << '\n';
  }
  return out.str();
}

int cmd_sweep(const SweepConfig& config, std::ostream& log) {
  require_out(config.base.out, "sweep");
  const std::vector<SweepRow> rows = run_sweep(config);
  write_file(config.base.out, format_sweep_csv(rows));
  bool failed = false;
  bool violated = false;
  for (const SweepRow& r : rows) {
    failed = failed || !r.error.empty();
    violated = violated || r.violations > 0;
  }
  log << "wrote " << rows.size() << " rows to " << config.base.out.string() << '\n';
  if (failed) return kExitConfigError;
  return violated ? kExitViolation : kExitPass;
}

}  // namespace dgd
