// Acceptance driver: one PASS/FAIL line per criterion, exit status 0 iff all
// selected criteria pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ubmlab/experiments.hpp"
#include "ubmlab/freemeasure.hpp"
#include "ubmlab/rmt.hpp"
#include "ubmlab/statistics.hpp"
#include "ubmlab/symflow.hpp"

using namespace ubmlab;
namespace fm = ubmlab::freemeasure;
namespace ex = ubmlab::experiments;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Check {
  std::string id;
  std::string title;
  std::function<Outcome()> run;
  double time_limit = 0.0;  // seconds, 0 for none
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ex::RunOptions options(std::uint64_t seed, int threads) {
  ex::RunOptions o;
  o.seed = seed;
  o.threads = threads;
  return o;
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, a, b, 1e-13);
}

const std::vector<double> kGridTimes{0.25, 0.5, 1.0, 2.0, 3.9};

Outcome moment_grid(const std::string& criterion) {
  std::vector<int> sizes(8);
  std::iota(sizes.begin(), sizes.end(), 1);
  const auto r = ex::moment_table(6, sizes, kGridTimes);
  const auto& c = r.criterion(criterion);
  return {c.pass, fmt("%zu cells, smallest margin %.3g", r.tables.at(0).second.rows.size(), c.margin)};
}

// Cycle type of a permutation given as an image list.
std::vector<int> cycle_type(const std::vector<int>& perm) {
  std::vector<int> out;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (auto j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = 1;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

// Every permutation of each class times every transposition, divided by the
// class size: the column for that class, with no use of representatives.
Outcome flow_oracle() {
  long cells = 0, mismatches = 0;
  for (int n = 1; n <= 6; ++n) {
    const auto f = symflow::build_flow_matrices(n);
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t k = 0; k < f.classes.size(); ++k) index[f.classes[k].parts()] = k;
    const auto m = static_cast<Eigen::Index>(f.classes.size());
    Eigen::MatrixXd split = Eigen::MatrixXd::Zero(m, m), merge = split;
    Eigen::VectorXd class_size = Eigen::VectorXd::Zero(m);

    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      const auto type = cycle_type(sigma);
      const auto c = static_cast<Eigen::Index>(index.at(type));
      class_size(c) += 1.0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          auto tau = sigma;
          std::swap(tau[static_cast<std::size_t>(i)], tau[static_cast<std::size_t>(j)]);
          const auto next = cycle_type(tau);
          const auto r = static_cast<Eigen::Index>(index.at(next));
          (next.size() > type.size() ? split : merge)(r, c) += 1.0;
        }
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    for (Eigen::Index c = 0; c < m; ++c) {
      for (Eigen::Index r = 0; r < m; ++r) {
        // Totals are integer multiples of the class size; compare as integers.
        const auto s = std::llround(split(r, c)), g = std::llround(merge(r, c));
        const auto size = std::llround(class_size(c));
        mismatches += s % size != 0 || f.split(r, c) != static_cast<double>(s / size);
        mismatches += g % size != 0 || f.merge(r, c) != static_cast<double>(g / size);
        cells += 2;
      }
    }
  }
  return {mismatches == 0, fmt("%ld entries compared, %ld mismatches", cells, mismatches)};
}

Outcome endpoint() {
  const double a = fm::support_halfwidth(1.0);
  return {std::abs(a - 1.9132) <= 5e-4, fmt("a(1) = %.6f", a)};
}

Outcome normalization() {
  double worst_mass = 0.0, worst_sym = 0.0;
  for (double t : {0.5, 1.0, 2.0, 3.5}) {
    const fm::SpectralMeasure nu(t);
    const double a = nu.half_width();
    const double mass = 2.0 * integrate([&](double x) { return nu.density(x); }, 0.0, a) / (2.0 * M_PI);
    worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
    for (int j = 0; j <= 10000; ++j) {
      const double theta = a * j / 10000.0;
      worst_sym = std::max(worst_sym, std::abs(nu.density(theta) - nu.density(-theta)));
    }
  }
  return {worst_mass <= 1e-6 && worst_sym <= 1e-10,
          fmt("max |mass - 1| = %.2e, max asymmetry = %.2e", worst_mass, worst_sym)};
}

Outcome quadrature_moments() {
  double worst = 0.0;
  for (double t : {0.5, 1.0, 2.0}) {
    const fm::SpectralMeasure nu(t);
    for (int n = 1; n <= 8; ++n) {
      const double q =
          2.0 * integrate([&](double x) { return std::cos(n * x) * nu.density(x); }, 0.0, nu.half_width()) / (2.0 * M_PI);
      worst = std::max(worst, std::abs(q - symflow::free_moment(n, t)));
    }
  }
  return {worst <= 1e-6, fmt("max deviation %.2e", worst)};
}

Outcome weak_correctness(std::uint64_t seed, int threads) {
  constexpr int kTrials = 2000;
  double worst_z = 0.0;
  bool ok = true;
  std::string detail;
  for (int N : {16, 32}) {
    std::vector<std::array<double, 4>> values(kTrials);
    ex::parallel_for(kTrials, ex::resolve_threads(threads), [&](int i) {
      rmt::RngStream rng(seed ^ (static_cast<std::uint64_t>(N) << 40), static_cast<std::uint64_t>(i));
      const rmt::CMatrix u = rmt::ubm_at(N, 1.0, 1e-2, rng);
      rmt::CMatrix p = u;
      for (int n = 0; n < 4; ++n) {
        values[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] = rmt::normalized_trace(p).real();
        p = p * u;
      }
    });
    for (int n = 1; n <= 4; ++n) {
      std::vector<double> xs;
      for (const auto& v : values) xs.push_back(v[static_cast<std::size_t>(n - 1)]);
      const double z = std::abs(stats::mean(xs) - symflow::finite_n_moment(n, N, 1.0)) / stats::standard_error(xs);
      worst_z = std::max(worst_z, z);
      ok = ok && z <= 3.0;
    }
  }
  return {ok, fmt("worst |mean - exact| = %.2f SE over N in {16, 32}, n <= 4", worst_z)};
}

Outcome hard_edge(std::uint64_t seed, int threads) {
  const auto r = ex::hard_edge_experiment(200, 1.0, 100, options(seed, threads));
  return {r.all_pass(), fmt("max |angle| %.4f vs a(1) %.4f, %g outside +0.05", r.scalar("max_abs_angle"),
                            r.scalar("support_halfwidth"), r.scalar("outside_margin_0.05"))};
}

Outcome hard_edge_long(std::uint64_t seed, int threads) {
  const auto r = ex::hard_edge_experiment(400, 1.0, 1000, options(seed, threads));
  const double lo = r.scalar("min_angle"), hi = r.scalar("max_angle");
  return {std::abs(lo + 1.9392) <= 0.02 && std::abs(hi - 1.9291) <= 0.02,
          fmt("angle range [%.4f, %.4f] vs [-1.9392, 1.9291]", lo, hi)};
}

Outcome coupling(std::uint64_t seed, int threads) {
  const double m64 = ex::coupling_experiment(64, 1.0, 20, options(seed, threads)).scalar("median");
  const double m256 = ex::coupling_experiment(256, 1.0, 20, options(seed, threads)).scalar("median");
  return {m256 < m64, fmt("median c: N=64 %.4f, N=256 %.4f", m64, m256)};
}

Outcome islands(std::uint64_t seed, int threads) {
  const auto pair = ex::example_projection_pair();
  const auto r = ex::jacobi_path_experiment(4, 16, pair.P, pair.Q, {0.01, 0.25}, 50, options(seed, threads));
  const double near = r.scalar("t=0.01/trials_all_within_0.1");
  const double band = r.scalar("t=0.25/trials_band_nonempty");
  return {near >= 0.95 && band >= 0.5 && r.all_pass(),
          fmt("t=0.01: %.0f%% of trials within 0.1; t=0.25: band nonempty in %.0f%%", 100 * near, 100 * band)};
}

Outcome longtime_jacobi(std::uint64_t seed, int threads) {
  constexpr int kTrials = 10;
  const auto half = ex::jacobi_longtime_experiment(0.5, 0.5, 128, 16.0, kTrials, true, options(seed, threads));
  const auto quarter = ex::jacobi_longtime_experiment(0.75, 0.75, 128, 16.0, kTrials, true, options(seed, threads));
  const double ks = half.scalar("ks_distance"), a0 = half.scalar("atom0_estimate");
  const double q0 = quarter.scalar("atom0_estimate"), q1 = quarter.scalar("atom1_estimate");
  const bool ok = ks <= 0.08 && std::abs(a0 - 0.5) <= 0.05 && std::abs(q0 - 0.25) <= 0.05 && std::abs(q1 - 0.5) <= 0.05;
  return {ok, fmt("(1/2,1/2): KS %.4f, atom0 %.4f; (3/4,3/4): atoms %.4f, %.4f", ks, a0, q0, q1)};
}

Outcome stationarity(std::uint64_t seed, int threads) {
  const auto r = ex::increment_stationarity_check(64, 0.5, 1.0, 200, options(seed, threads));
  return {r.criterion("ks_pass_at_1_percent").pass,
          fmt("KS %.4f, p = %.3f", r.scalar("ks_statistic"), r.scalar("p_value"))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria for ubmlab"};
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;
  std::vector<std::string> only;
  bool with_long = false;
  app.add_option("--seed", seed, "Master seed for the Monte Carlo criteria")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads (0: UBMLAB_THREADS or hardware count)");
  app.add_option("--only", only, "Run only these criteria (e.g. 1,7,8L)")->delimiter(',');
  app.add_flag("--long", with_long, "Also run the N=400, 1000-trial hard-edge range check (8L)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Check> checks{
      {"1", "moment bound |nu_t^N(n) - nu_t(n)| <= t^2 n^4 / N^2", [] { return moment_grid("moment_bound"); }, 5.0},
      {"2", "Cauchy bound |nu_t^N(n) - nu_t^2N(n)| <= 3 t^2 n^4 / 4N^2", [] { return moment_grid("cauchy_bound"); }},
      {"3", "flow matrices equal S_n enumeration, n <= 6", flow_oracle, 10.0},
      {"4", "support endpoint a(1) = 1.9132 +- 5e-4", endpoint},
      {"5", "density mass 1 +- 1e-6 and symmetry 1e-10", normalization},
      {"6", "quadrature moments match free moments to 1e-6", quadrature_moments},
      {"7", "simulator weak correctness, 3 SE", [&] { return weak_correctness(seed, threads); }, 120.0},
      {"8", "hard edge N=200, t=1, 100 trials", [&] { return hard_edge(seed, threads); }},
      {"8L", "hard edge range N=400, t=1, 1000 trials, +-0.02", [&] { return hard_edge_long(seed, threads); }},
      {"9", "GUE coupling median decreases from N=64 to N=256", [&] { return coupling(seed, threads); }},
      {"10", "Jacobi islands k=4, N=16", [&] { return islands(seed, threads); }},
      {"11", "long-time Jacobi vs free Jacobi law, N=128", [&] { return longtime_jacobi(seed, threads); }},
      {"12", "increment stationarity KS at 1%, N=64", [&] { return stationarity(seed, threads); }},
  };

  std::printf("seed %llu\n", static_cast<unsigned long long>(seed));
  std::fflush(stdout);
  bool all = true;
  for (const auto& c : checks) {
    const bool selected = only.empty() ? (c.id != "8L" || with_long)
                                       : std::find(only.begin(), only.end(), c.id) != only.end();
    if (!selected) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0 && secs > c.time_limit) {
      o.pass = false;
      o.detail += fmt("; over the %.0f s limit", c.time_limit);
    }
    all = all && o.pass;
    std::printf("%s C%-3s %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
