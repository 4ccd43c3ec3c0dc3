#include <algorithm>
#include <cmath>
#include <limits>

#include "common.hpp"
#include "ubmlab/symflow.hpp"

namespace ubmlab::experiments {

ExperimentReport moment_table(int n_max, const std::vector<int>& N_list, const std::vector<double>& t_list) {
  if (n_max < 1 || n_max > symflow::kMaxFlowN) throw SizeError("moment_table: n_max must lie in [1, 12]");
  if (N_list.empty() || t_list.empty()) throw DomainError("moment_table: empty N or t list");
  for (int N : N_list) {
    if (N < 1) throw DomainError("moment_table: N must be >= 1");
  }
  for (double t : t_list) detail::require_time(t, "moment_table");

  ExperimentReport r;
  r.name = "moment_table";
  r.params = {{"n_max", n_max}, {"N_list", N_list}, {"t_list", t_list}};

  Table table;
  table.columns = {"n", "N", "t", "finite", "free", "diff", "bound", "pass",
                   "finite_2N", "cauchy_diff", "cauchy_bound", "cauchy_pass"};
  bool bound_ok = true, cauchy_ok = true;
  double bound_margin = std::numeric_limits<double>::infinity();
  double cauchy_margin = bound_margin;
  for (int n = 1; n <= n_max; ++n) {
    for (int N : N_list) {
      for (double t : t_list) {
        const double finite = symflow::finite_n_moment(n, N, t);
        const double free = symflow::free_moment(n, t);
        const double finite_2n = symflow::finite_n_moment(n, 2 * N, t);
        const auto bound = symflow::check_moment_bound(n, N, t);
        const auto cauchy = symflow::check_cauchy_bound(n, N, t);
        bound_ok = bound_ok && bound.pass;
        cauchy_ok = cauchy_ok && cauchy.pass;
        bound_margin = std::min(bound_margin, bound.rhs + symflow::kBoundSlack - bound.lhs);
        cauchy_margin = std::min(cauchy_margin, cauchy.rhs + symflow::kBoundSlack - cauchy.lhs);
        table.rows.push_back({std::int64_t{n}, std::int64_t{N}, t, finite, free, bound.lhs, bound.rhs, bound.pass,
                              finite_2n, cauchy.lhs, cauchy.rhs, cauchy.pass});
      }
    }
  }
  r.set_scalar("rows", static_cast<double>(table.rows.size()));
  r.set_scalar("moment_bound_min_margin", bound_margin);
  r.set_scalar("cauchy_bound_min_margin", cauchy_margin);
  r.tables.emplace_back("moments", std::move(table));
  r.add_criterion("moment_bound", bound_ok, bound_margin);
  r.add_criterion("cauchy_bound", cauchy_ok, cauchy_margin);
  return r;
}

}  // namespace ubmlab::experiments
