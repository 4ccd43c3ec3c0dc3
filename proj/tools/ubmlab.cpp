// ubmlab: command-line front end.
//
// Exit codes: 0 success, 1 an experiment criterion failed, 2 usage or
// precondition error, 3 numerical failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ubmlab/errors.hpp"
#include "ubmlab/experiments.hpp"
#include "ubmlab/freemeasure.hpp"
#include "ubmlab/report.hpp"
#include "ubmlab/rmt.hpp"

namespace {

using namespace ubmlab;
namespace ex = ubmlab::experiments;

enum Exit { kOk = 0, kCriterion = 1, kUsage = 2, kNumeric = 3 };

struct Output {
  std::string path = "-";
  std::string format = "csv";
};

struct Stochastic {
  std::optional<std::uint64_t> seed;
  int threads = 0;
  double step = rmt::kDefaultStep;
  std::string scheme = "geodesic";

  ex::RunOptions options() const {
    return {*seed, threads, step, rmt::parse_scheme(scheme)};
  }
};

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--out", out.path, "Output file ('-' for standard output)")->capture_default_str();
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_stochastic(CLI::App* cmd, Stochastic& s) {
  cmd->add_option("--seed", s.seed, "Master seed")->required();
  cmd->add_option("--threads", s.threads, "Worker threads (0: UBMLAB_THREADS or hardware count)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--step", s.step, "Integrator step")->check(CLI::Range(1e-9, rmt::kMaxStep))->capture_default_str();
  cmd->add_option("--scheme", s.scheme, "Integrator")
      ->check(CLI::IsMember({"geodesic", "euler-polar"}))
      ->capture_default_str();
}

// Everything the user could have set, for provenance. The thread count is left
// out because it never changes the results.
Json run_config(const CLI::App* cmd) {
  Json cfg = Json::object();
  cfg["command"] = cmd->get_name();
  for (const CLI::Option* opt : cmd->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "threads") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_expected_max() > 1) {
        cfg[name] = res;
      } else if (!res.empty()) {
        cfg[name] = res.back();
      } else {
        cfg[name] = true;
      }
    } else if (!opt->get_default_str().empty()) {
      cfg[name] = opt->get_default_str();
    }
  }
  return cfg;
}

void emit(const ExperimentReport& report, const Output& out) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (out.path != "-") {
    file.open(out.path, std::ios::binary);
    if (!file) throw ContractError("cannot open '" + out.path + "' for writing");
    os = &file;
  }
  if (out.format == "json") {
    write_json(report, *os);
  } else {
    write_csv(report, *os);
  }
  os->flush();
  if (!*os) throw std::runtime_error("failed writing '" + out.path + "'");
}

int finish(ExperimentReport report, const Output& out, const CLI::App* cmd) {
  report.params["run_config"] = run_config(cmd);
  emit(report, out);
  for (const auto& c : report.criteria) {
    if (!c.pass) std::cerr << "criterion failed: " << c.name << " (margin " << format_double(c.margin) << ")\n";
  }
  return report.all_pass() ? kOk : kCriterion;
}

ExperimentReport density_table(double t, int grid) {
  const freemeasure::SpectralMeasure nu(t);
  const double a = nu.half_width();
  ExperimentReport r;
  r.name = "density";
  r.params = {{"t", t}, {"grid", grid}};
  r.params["density_convention"] = "density_haar integrates against dtheta/2pi; density_per_radian against dtheta";
  Table table;
  table.columns = {"theta", "density_haar", "density_per_radian", "cdf"};
  double mass = 0.0, prev = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double theta = -a + 2.0 * a * j / (grid - 1);
    const double rho = nu.density(theta);
    table.rows.push_back({theta, rho, nu.density_per_radian(theta), nu.cdf(theta)});
    if (j > 0) mass += 0.5 * (rho + prev) * (2.0 * a / (grid - 1));
    prev = rho;
  }
  r.set_scalar("support_halfwidth", a);
  r.set_scalar("trapezoid_mass", mass / (2.0 * 3.14159265358979323846));
  r.tables.emplace_back("density", std::move(table));
  return r;
}

ExperimentReport simulate(int N, double t, int trials, const ex::RunOptions& opts) {
  std::vector<std::vector<double>> angles(static_cast<std::size_t>(trials));
  std::vector<double> defect(static_cast<std::size_t>(trials));
  std::vector<rmt::cplx> trace(static_cast<std::size_t>(trials));
  ex::parallel_for(trials, opts.threads, [&](int i) {
    rmt::RngStream rng(opts.seed, static_cast<std::uint64_t>(i));
    const auto u = rmt::ubm_at(N, t, opts.step, rng, opts.scheme);
    angles[static_cast<std::size_t>(i)] = rmt::eigangles(u);
    defect[static_cast<std::size_t>(i)] = rmt::unitarity_defect(u);
    trace[static_cast<std::size_t>(i)] = rmt::normalized_trace(u);
  });
  ExperimentReport r;
  r.name = "simulate";
  r.params = {{"N", N}, {"t", t}, {"trials", trials}, {"seed", opts.seed}, {"step", opts.step},
              {"scheme", rmt::scheme_name(opts.scheme)}};
  Table table;
  table.columns = {"trial", "k", "angle"};
  double re = 0.0, im = 0.0, worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const auto& a = angles[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < a.size(); ++k) table.rows.push_back({std::int64_t{i}, static_cast<std::int64_t>(k), a[k]});
    re += trace[static_cast<std::size_t>(i)].real();
    im += trace[static_cast<std::size_t>(i)].imag();
    worst = std::max(worst, defect[static_cast<std::size_t>(i)]);
  }
  r.set_scalar("mean_trace_re", re / trials);
  r.set_scalar("mean_trace_im", im / trials);
  r.set_scalar("max_unitarity_defect", worst);
  r.tables.emplace_back("eigenangles", std::move(table));
  return r;
}

rmt::CMatrix read_matrix(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw ContractError(std::string("projection file lacks '") + key + "'");
  const auto& rows = j[key];
  const auto n = static_cast<Eigen::Index>(rows.size());
  rmt::CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (!rows[r].is_array() || static_cast<Eigen::Index>(rows[r].size()) != n) {
      throw ContractError(std::string("'") + key + "' must be a square array of numbers");
    }
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = rows[r][c].get<double>();
  }
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitary Brownian motion: exact moments, free limits and simulations"};
  app.set_config("--config", "", "Read options from a TOML/INI file; flags on the command line win");
  app.require_subcommand(1);
  // lets --config appear after the subcommand name
  app.fallthrough();

  // moments
  auto* moments = app.add_subcommand("moments", "Finite-N vs free moment bounds on a grid");
  int n_max = 6;
  std::vector<int> n_list{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<double> t_list{0.25, 0.5, 1.0, 2.0, 3.9};
  Output moments_out;
  moments->add_option("--n-max", n_max, "Largest moment order")->capture_default_str();
  moments->add_option("--N-list", n_list, "Matrix sizes")->delimiter(',')->capture_default_str();
  moments->add_option("--t-list", t_list, "Times")->delimiter(',')->capture_default_str();
  add_output(moments, moments_out);

  // density
  auto* density = app.add_subcommand("density", "Density and CDF of nu_t on a grid over its support");
  double density_t = 1.0;
  int grid = 512;
  Output density_out;
  density->add_option("--t", density_t, "Time")->required();
  density->add_option("--grid", grid, "Number of grid points")->check(CLI::Range(2, 10000000))->capture_default_str();
  add_output(density, density_out);

  // quantile
  auto* quantile = app.add_subcommand("quantile", "Quantile of nu_t (angle in radians)");
  double quantile_t = 1.0, quantile_r = 0.5;
  std::string quantile_format = "text";
  quantile->add_option("--t", quantile_t, "Time")->required();
  quantile->add_option("--r", quantile_r, "Probability level in [0, 1]")->required();
  quantile->add_option("--format", quantile_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  // simulate
  auto* sim = app.add_subcommand("simulate", "Sample U_t^N and record its eigenangles");
  int sim_n = 16, sim_trials = 1;
  double sim_t = 1.0;
  Stochastic sim_rng;
  Output sim_out;
  sim->add_option("--N", sim_n, "Matrix size")->required();
  sim->add_option("--t", sim_t, "Time")->required();
  sim->add_option("--trials", sim_trials, "Independent samples")->capture_default_str();
  add_stochastic(sim, sim_rng);
  add_output(sim, sim_out);

  // hard-edge
  auto* edge = app.add_subcommand("hard-edge", "Eigenangle range vs the support arc");
  int edge_n = 200, edge_trials = 100;
  double edge_t = 1.0;
  Stochastic edge_rng;
  Output edge_out;
  edge->add_option("--N", edge_n, "Matrix size")->capture_default_str();
  edge->add_option("--t", edge_t, "Time")->capture_default_str();
  edge->add_option("--trials", edge_trials, "Trials")->capture_default_str();
  add_stochastic(edge, edge_rng);
  add_output(edge, edge_out);

  // coupling
  auto* coupling = app.add_subcommand("coupling", "Sorted coupling of GUE and U_t^N eigenvalues through f_t");
  int coupling_n = 64, coupling_trials = 20;
  double coupling_t = 1.0;
  Stochastic coupling_rng;
  Output coupling_out;
  coupling->add_option("--N", coupling_n, "Matrix size")->capture_default_str();
  coupling->add_option("--t", coupling_t, "Time")->capture_default_str();
  coupling->add_option("--trials", coupling_trials, "Trials")->capture_default_str();
  add_stochastic(coupling, coupling_rng);
  add_output(coupling, coupling_out);

  // jacobi
  auto* jacobi = app.add_subcommand("jacobi", "Matrix Jacobi process: island path or long-time law");
  std::string mode = "path";
  int jacobi_n = 16, jacobi_trials = 50;
  std::vector<double> jacobi_times{0.01, 0.25};
  std::string projections;
  double alpha = 0.5, beta = 0.5, t_large = 16.0;
  bool haar = false;
  Stochastic jacobi_rng;
  Output jacobi_out;
  jacobi->add_option("--mode", mode, "path or longtime")->check(CLI::IsMember({"path", "longtime"}))->capture_default_str();
  jacobi->add_option("--N", jacobi_n, "Block size (path) or matrix size (longtime)")->capture_default_str();
  jacobi->add_option("--trials", jacobi_trials, "Trials")->capture_default_str();
  jacobi->add_option("--t-list", jacobi_times, "Times (path mode)")->delimiter(',')->capture_default_str();
  jacobi->add_option("--projections", projections, "JSON file with k x k real matrices \"P\" and \"Q\" (path mode)")
      ->check(CLI::ExistingFile);
  jacobi->add_option("--alpha", alpha, "Trace of P (longtime mode)")->capture_default_str();
  jacobi->add_option("--beta", beta, "Trace of Q (longtime mode)")->capture_default_str();
  jacobi->add_option("--t-large", t_large, "Evolution time (longtime mode)")->capture_default_str();
  jacobi->add_flag("--haar", haar, "Use a Haar unitary instead of evolving (longtime mode)");
  add_stochastic(jacobi, jacobi_rng);
  add_output(jacobi, jacobi_out);

  // stationarity
  auto* stat = app.add_subcommand("stationarity", "Two-sample KS checks of the increment law");
  std::string check = "increment";
  int stat_n = 64, stat_trials = 200;
  double stat_s = 0.5, stat_t = 1.0;
  Stochastic stat_rng;
  Output stat_out;
  stat->add_option("--check", check, "increment: U_s^-1 U_t vs U_{t-s}; inverse: U_t^-1 vs U_t")
      ->check(CLI::IsMember({"increment", "inverse"}))
      ->capture_default_str();
  stat->add_option("--N", stat_n, "Matrix size")->capture_default_str();
  stat->add_option("--s", stat_s, "Start of the increment")->capture_default_str();
  stat->add_option("--t", stat_t, "End of the increment")->capture_default_str();
  stat->add_option("--trials", stat_trials, "Trials")->capture_default_str();
  add_stochastic(stat, stat_rng);
  add_output(stat, stat_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*moments) return finish(ex::moment_table(n_max, n_list, t_list), moments_out, moments);
    if (*density) {
      if (!(density_t > 0.0)) throw DomainError("density: t must be > 0");
      return finish(density_table(density_t, grid), density_out, density);
    }
    if (*quantile) {
      if (!(quantile_t > 0.0)) throw DomainError("quantile: t must be > 0");
      const double theta = freemeasure::quantile(quantile_t, quantile_r);
      if (quantile_format == "json") {
        std::cout << Json{{"t", quantile_t}, {"r", quantile_r}, {"theta", theta}}.dump() << '\n';
      } else {
        std::cout << format_double(theta) << '\n';
      }
      return kOk;
    }
    if (*sim) {
      if (sim_n < 1 || sim_trials < 1 || !(sim_t >= 0.0)) throw DomainError("simulate: need N >= 1, trials >= 1, t >= 0");
      return finish(simulate(sim_n, sim_t, sim_trials, sim_rng.options()), sim_out, sim);
    }
    if (*edge) return finish(ex::hard_edge_experiment(edge_n, edge_t, edge_trials, edge_rng.options()), edge_out, edge);
    if (*coupling) {
      return finish(ex::coupling_experiment(coupling_n, coupling_t, coupling_trials, coupling_rng.options()),
                    coupling_out, coupling);
    }
    if (*jacobi) {
      if (mode == "longtime") {
        return finish(ex::jacobi_longtime_experiment(alpha, beta, jacobi_n, t_large, jacobi_trials, haar,
                                                     jacobi_rng.options()),
                      jacobi_out, jacobi);
      }
      auto pair = ex::example_projection_pair();
      if (!projections.empty()) {
        std::ifstream in(projections);
        Json j;
        try {
          j = Json::parse(in);
        } catch (const Json::exception& e) {
          throw ContractError(std::string("cannot parse projection file: ") + e.what());
        }
        pair = ex::make_projection_pair(read_matrix(j, "P"), read_matrix(j, "Q"));
      }
      return finish(ex::jacobi_path_experiment(pair.N, jacobi_n, pair.P, pair.Q, jacobi_times, jacobi_trials,
                                               jacobi_rng.options()),
                    jacobi_out, jacobi);
    }
    if (*stat) {
      auto report = check == "inverse"
                        ? ex::inverse_symmetry_check(stat_n, stat_t, stat_trials, stat_rng.options())
                        : ex::increment_stationarity_check(stat_n, stat_s, stat_t, stat_trials, stat_rng.options());
      return finish(std::move(report), stat_out, stat);
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SizeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
