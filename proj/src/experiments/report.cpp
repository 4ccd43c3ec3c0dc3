#include "ubmlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "ubmlab/errors.hpp"

namespace ubmlab {

Histogram::Histogram(double lo, double hi, int bins) : lo_(lo), hi_(hi) {
  if (bins < 1) throw DomainError("Histogram: bins must be >= 1");
  if (!(hi > lo)) throw DomainError("Histogram: need lo < hi");
  counts_.assign(static_cast<std::size_t>(bins), 0);
}

void Histogram::add(double x) {
  if (x < lo_ || std::isnan(x)) {
    ++below_;
    return;
  }
  if (x > hi_) {
    ++above_;
    return;
  }
  auto i = static_cast<std::size_t>((x - lo_) / (hi_ - lo_) * static_cast<double>(counts_.size()));
  ++counts_[std::min(i, counts_.size() - 1)];
}

void Histogram::merge(const Histogram& other) {
  if (other.counts_.size() != counts_.size() || other.lo_ != lo_ || other.hi_ != hi_) {
    throw ContractError("Histogram::merge: binning differs");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  below_ += other.below_;
  above_ += other.above_;
}

double Histogram::edge(int i) const {
  if (i == bins()) return hi_;
  return lo_ + (hi_ - lo_) * static_cast<double>(i) / static_cast<double>(bins());
}

std::uint64_t Histogram::total() const {
  std::uint64_t s = below_ + above_;
  for (auto c : counts_) s += c;
  return s;
}

void ExperimentReport::set_scalar(const std::string& key, double value) {
  for (auto& [k, v] : scalars) {
    if (k == key) {
      v = value;
      return;
    }
  }
  scalars.emplace_back(key, value);
}

double ExperimentReport::scalar(const std::string& key) const {
  for (const auto& [k, v] : scalars) {
    if (k == key) return v;
  }
  throw ContractError("report '" + name + "' has no scalar '" + key + "'");
}

bool ExperimentReport::has_scalar(const std::string& key) const {
  return std::any_of(scalars.begin(), scalars.end(), [&](const auto& kv) { return kv.first == key; });
}

void ExperimentReport::add_criterion(std::string criterion, bool pass, double margin) {
  criteria.push_back({std::move(criterion), pass, margin});
}

const Criterion& ExperimentReport::criterion(const std::string& key) const {
  for (const auto& c : criteria) {
    if (c.name == key) return c;
  }
  throw ContractError("report '" + name + "' has no criterion '" + key + "'");
}

bool ExperimentReport::all_pass() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const Criterion& c) { return c.pass; });
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

std::string short_number(double x) {
  if (!std::isfinite(x)) return format_double(x);
  return Json(x).dump();
}

namespace {

Json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return Json(v); }, c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return csv_escape(v); }
  } visitor;
  return std::visit(visitor, c);
}

// JSON numbers go through nlohmann, which prints shortest round-trip digits.
Json finite_or_string(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

}  // namespace

Json to_json(const ExperimentReport& report) {
  Json j;
  j["name"] = report.name;
  j["params"] = report.params;
  Json scalars = Json::object();
  for (const auto& [k, v] : report.scalars) scalars[k] = finite_or_string(v);
  j["scalars"] = scalars;
  Json hists = Json::object();
  for (const auto& [k, h] : report.histograms) {
    Json edges = Json::array();
    for (int i = 0; i <= h.bins(); ++i) edges.push_back(h.edge(i));
    hists[k] = {{"lo", h.lo()}, {"hi", h.hi()}, {"bins", h.bins()}, {"edges", edges},
                {"counts", h.counts()}, {"below", h.below()}, {"above", h.above()}};
  }
  j["histograms"] = hists;
  Json tables = Json::object();
  for (const auto& [k, t] : report.tables) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
      Json r = Json::array();
      for (const auto& c : row) r.push_back(cell_json(c));
      rows.push_back(r);
    }
    tables[k] = {{"columns", t.columns}, {"rows", rows}};
  }
  j["tables"] = tables;
  Json criteria = Json::array();
  for (const auto& c : report.criteria) {
    criteria.push_back({{"name", c.name}, {"pass", c.pass}, {"margin", finite_or_string(c.margin)}});
  }
  j["criteria"] = criteria;
  j["pass"] = report.all_pass();
  return j;
}

void write_json(const ExperimentReport& report, std::ostream& out) { out << to_json(report).dump(2) << '\n'; }

void write_csv(const ExperimentReport& report, std::ostream& out) {
  out << "# " << report.name << ' ' << report.params.dump() << '\n';
  bool first = true;
  auto gap = [&] {
    if (!first) out << '\n';
    first = false;
  };
  for (const auto& [k, t] : report.tables) {
    gap();
    out << "table";
    for (const auto& c : t.columns) out << ',' << csv_escape(c);
    out << '\n';
    for (const auto& row : t.rows) {
      out << csv_escape(k);
      for (const auto& c : row) out << ',' << cell_text(c);
      out << '\n';
    }
  }
  if (!report.scalars.empty()) {
    gap();
    out << "scalar,value\n";
    for (const auto& [k, v] : report.scalars) out << csv_escape(k) << ',' << format_double(v) << '\n';
  }
  if (!report.criteria.empty()) {
    gap();
    out << "criterion,pass,margin\n";
    for (const auto& c : report.criteria) {
      out << csv_escape(c.name) << ',' << (c.pass ? "true" : "false") << ',' << format_double(c.margin) << '\n';
    }
  }
  for (const auto& [k, h] : report.histograms) {
    gap();
    out << "histogram,bin_lo,bin_hi,count\n";
    for (int i = 0; i < h.bins(); ++i) {
      out << csv_escape(k) << ',' << format_double(h.edge(i)) << ',' << format_double(h.edge(i + 1)) << ','
          << h.counts()[static_cast<std::size_t>(i)] << '\n';
    }
  }
}

}  // namespace ubmlab
