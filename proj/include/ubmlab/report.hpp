#pragma once

// Structured experiment output: parameters, scalar statistics, histograms,
// tables and pass/fail criteria, serializable to JSON and CSV.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ubmlab {

using Json = nlohmann::ordered_json;

/// Equal-width bins on [lo, hi]; values equal to hi fall in the last bin and
/// values outside are counted separately.
class Histogram {
 public:
  Histogram() = default;
  Histogram(double lo, double hi, int bins);

  void add(double x);
  void merge(const Histogram& other);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int bins() const { return static_cast<int>(counts_.size()); }
  double edge(int i) const;
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t below() const { return below_; }
  std::uint64_t above() const { return above_; }
  /// In-range count plus the out-of-range tallies.
  std::uint64_t total() const;

 private:
  double lo_ = 0.0, hi_ = 1.0;
  std::vector<std::uint64_t> counts_;
  std::uint64_t below_ = 0, above_ = 0;
};

using Cell = std::variant<std::int64_t, double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Criterion {
  std::string name;
  bool pass = false;
  /// Distance to the threshold, positive on the passing side.
  double margin = 0.0;
};

struct ExperimentReport {
  std::string name;
  Json params = Json::object();
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::pair<std::string, Histogram>> histograms;
  std::vector<std::pair<std::string, Table>> tables;
  std::vector<Criterion> criteria;

  void set_scalar(const std::string& key, double value);
  /// Throws ContractError for a missing key.
  double scalar(const std::string& key) const;
  bool has_scalar(const std::string& key) const;
  void add_criterion(std::string criterion, bool pass, double margin);
  const Criterion& criterion(const std::string& key) const;
  bool all_pass() const;
};

/// 17 significant digits; integral values keep a trailing ".0".
std::string format_double(double x);
/// Shortest round-trip form, for labels such as "t=0.1".
std::string short_number(double x);

Json to_json(const ExperimentReport& report);
void write_json(const ExperimentReport& report, std::ostream& out);
/// One comment line with the name and parameters, then one CSV block per
/// section separated by blank lines.
void write_csv(const ExperimentReport& report, std::ostream& out);

}  // namespace ubmlab
