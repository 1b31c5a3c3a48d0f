#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "zopt/aggregate.hpp"
#include "zopt/errors.hpp"

namespace zopt {

namespace {

constexpr const char* kMagic = "# zopt-aggregate 1";

void put_double(std::ostream& out, double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.write(buf, len);
}

double parse_double(const std::string& field) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ConfigError("csv: bad number '" + field + "'");
  }
  return v;
}

}  // namespace

void write_csv(std::ostream& out, const AggregateSeries& s) {
  const bool has_bound = !s.bound_rhs.empty();
  const bool has_gap = !s.avg_gap.empty();
  out << kMagic << '\n';
  out << "# num_runs=" << s.num_runs << '\n';
  for (const auto& [key, value] : s.metadata) out << "# " << key << '=' << value << '\n';
  out << "k,mean_f,std_f,mean_best_f";
  if (has_bound) out << ",bound_rhs";
  if (has_gap) out << ",avg_gap,avg_gap_se";
  out << '\n';
  for (std::size_t i = 0; i < s.checkpoints.size(); ++i) {
    out << s.checkpoints[i] << ',';
    put_double(out, s.mean_f[i]);
    out << ',';
    put_double(out, s.std_f[i]);
    out << ',';
    put_double(out, s.mean_best_f[i]);
    if (has_bound) {
      out << ',';
      put_double(out, s.bound_rhs[i]);
    }
    if (has_gap) {
      out << ',';
      put_double(out, s.avg_gap[i]);
      out << ',';
      put_double(out, s.avg_gap_se[i]);
    }
    out << '\n';
  }
}

AggregateSeries read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMagic) throw ConfigError("csv: missing zopt-aggregate header");
  AggregateSeries s;
  bool num_runs_seen = false;
  while (std::getline(in, line) && line.rfind("# ", 0) == 0) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("csv: malformed metadata line");
    std::string key = line.substr(2, eq - 2);
    std::string value = line.substr(eq + 1);
    if (key == "num_runs" && !num_runs_seen) {
      s.num_runs = static_cast<std::size_t>(std::stoull(value));
      num_runs_seen = true;
    } else {
      s.metadata.emplace_back(std::move(key), std::move(value));
    }
  }
  bool has_bound = false;
  bool has_gap = false;
  if (line == "k,mean_f,std_f,mean_best_f") {
  } else if (line == "k,mean_f,std_f,mean_best_f,bound_rhs") {
    has_bound = true;
  } else if (line == "k,mean_f,std_f,mean_best_f,avg_gap,avg_gap_se") {
    has_gap = true;
  } else if (line == "k,mean_f,std_f,mean_best_f,bound_rhs,avg_gap,avg_gap_se") {
    has_bound = has_gap = true;
  } else {
    throw ConfigError("csv: unexpected column header '" + line + "'");
  }
  const std::size_t columns = 4 + (has_bound ? 1 : 0) + (has_gap ? 2 : 0);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != columns) throw ConfigError("csv: wrong number of columns");
    s.checkpoints.push_back(static_cast<std::size_t>(std::stoull(fields[0])));
    s.mean_f.push_back(parse_double(fields[1]));
    s.std_f.push_back(parse_double(fields[2]));
    s.mean_best_f.push_back(parse_double(fields[3]));
    std::size_t c = 4;
    if (has_bound) s.bound_rhs.push_back(parse_double(fields[c++]));
    if (has_gap) {
      s.avg_gap.push_back(parse_double(fields[c++]));
      s.avg_gap_se.push_back(parse_double(fields[c++]));
    }
  }
  return s;
}

}  // namespace zopt
