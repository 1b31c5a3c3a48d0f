#include "zopt/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace zopt {

namespace {

std::string format_location(const std::string& path, std::size_t line,
                            const std::string& message) {
  std::ostringstream out;
  out << path;
  if (line > 0) out << ':' << line;
  out << ": " << message;
  return out.str();
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

bool valid_identifier(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '.';
  });
}

}  // namespace

ConfigParseError::ConfigParseError(const std::string& path, std::size_t line,
                                   const std::string& message)
    : std::runtime_error(format_location(path, line, message)), line_(line) {}

KeyValueFile KeyValueFile::parse(const std::string& text, const std::string& path) {
  KeyValueFile file;
  file.path_ = path;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigParseError(path, line_no, "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!valid_identifier(section)) {
        throw ConfigParseError(path, line_no, "invalid section name '" + section + "'");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigParseError(path, line_no, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!valid_identifier(key)) throw ConfigParseError(path, line_no, "invalid key '" + key + "'");
    if (section.empty()) throw ConfigParseError(path, line_no, "key '" + key + "' outside any section");
    const std::string full_key = section + "." + key;
    if (file.entries_.count(full_key)) {
      throw ConfigParseError(path, line_no, "duplicate key '" + full_key + "'");
    }
    file.entries_.emplace(full_key, Entry{value, line_no});
  }
  return file;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError(path, 0, "cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path);
}

const KeyValueFile::Entry* KeyValueFile::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void KeyValueFile::set(const std::string& key, Entry entry) { entries_[key] = std::move(entry); }

void KeyValueFile::erase_section(const std::string& section) {
  const std::string prefix = section + ".";
  std::erase_if(entries_, [&](const auto& kv) { return kv.first.rfind(prefix, 0) == 0; });
}

std::string StepSpec::label() const {
  switch (kind) {
    case Kind::theorem: return "theorem";
    case Kind::n_scaled: return "n_scaled";
    case Kind::value: break;
  }
  std::ostringstream out;
  out << value;
  return out.str();
}

FeasibleSet SetSpec::build(std::size_t dim) const {
  switch (kind) {
    case FeasibleSet::Kind::whole_space: return FeasibleSet::whole_space(dim);
    case FeasibleSet::Kind::box: return FeasibleSet::uniform_box(dim, lower, upper);
    case FeasibleSet::Kind::ball:
      return FeasibleSet::ball(Vector::Constant(static_cast<Eigen::Index>(dim), center), radius);
  }
  return FeasibleSet::whole_space(dim);
}

namespace {

/// Reads typed values out of a KeyValueFile, tracking which keys were used.
class Reader {
 public:
  explicit Reader(const KeyValueFile& file) : file_(file) {}

  const KeyValueFile::Entry* get(const std::string& key) {
    used_.insert(key);
    return file_.find(key);
  }

  [[noreturn]] void fail(const KeyValueFile::Entry& e, const std::string& key,
                         const std::string& what) const {
    throw ConfigParseError(file_.path(), e.line, key + ": " + what + " (got '" + e.value + "')");
  }

  double number(const KeyValueFile::Entry& e, const std::string& key) const {
    double v = 0.0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) fail(e, key, "expected a number");
    return v;
  }

  std::uint64_t integer(const KeyValueFile::Entry& e, const std::string& key) const {
    std::uint64_t v = 0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) fail(e, key, "expected a nonnegative integer");
    return v;
  }

  void read(const std::string& key, double& out) {
    if (const auto* e = get(key)) out = number(*e, key);
  }
  void read(const std::string& key, std::size_t& out) {
    if (const auto* e = get(key)) out = static_cast<std::size_t>(integer(*e, key));
  }
  void read_u64(const std::string& key, std::uint64_t& out) {
    if (const auto* e = get(key)) out = integer(*e, key);
  }
  void read(const std::string& key, bool& out) {
    if (const auto* e = get(key)) {
      if (e->value == "true" || e->value == "1" || e->value == "yes") {
        out = true;
      } else if (e->value == "false" || e->value == "0" || e->value == "no") {
        out = false;
      } else {
        fail(*e, key, "expected true or false");
      }
    }
  }
  void read(const std::string& key, std::string& out) {
    if (const auto* e = get(key)) out = e->value;
  }

  void reject_unknown() const {
    for (const auto& [key, entry] : file_.entries()) {
      if (!used_.count(key)) {
        throw ConfigParseError(file_.path(), entry.line, "unknown key '" + key + "'");
      }
    }
  }

  std::size_t line_of(const std::string& key) const {
    const auto* e = file_.find(key);
    return e ? e->line : 0;
  }

 private:
  const KeyValueFile& file_;
  std::set<std::string> used_;
};

std::vector<StepSpec> parse_steps(Reader& r, const KeyValueFile::Entry& e, const std::string& key) {
  std::vector<StepSpec> steps;
  std::istringstream list(e.value);
  std::string item;
  while (std::getline(list, item, ',')) {
    item = trim(item);
    StepSpec s;
    if (item == "theorem") {
      s.kind = StepSpec::Kind::theorem;
    } else if (item == "n_scaled") {
      s.kind = StepSpec::Kind::n_scaled;
    } else {
      s.kind = StepSpec::Kind::value;
      s.value = r.number(KeyValueFile::Entry{item, e.line}, key);
      if (!(s.value > 0.0)) r.fail(e, key, "step sizes must be positive");
    }
    steps.push_back(s);
  }
  if (steps.empty()) r.fail(e, key, "expected at least one step size");
  return steps;
}

}  // namespace

ExperimentConfig parse_experiment_config(KeyValueFile file, bool full) {
  if (full) {
    std::vector<std::pair<std::string, KeyValueFile::Entry>> overrides;
    for (const auto& [key, entry] : file.entries()) {
      if (key.rfind("full.", 0) == 0) overrides.emplace_back(key.substr(5), entry);
    }
    for (auto& [key, entry] : overrides) {
      if (key.find('.') == std::string::npos) {
        throw ConfigParseError(file.path(), entry.line,
                               "[full] keys must be written as section.key");
      }
      file.set(key, entry);
    }
  }
  file.erase_section("full");

  ExperimentConfig cfg;
  Reader r(file);

  if (const auto* e = r.get("experiment.scenario")) {
    if (e->value == "unconstrained") {
      cfg.scenario = ProblemMode::unconstrained;
    } else if (e->value == "constrained") {
      cfg.scenario = ProblemMode::constrained;
    } else {
      r.fail(*e, "experiment.scenario", "expected unconstrained or constrained");
    }
  } else {
    throw ConfigParseError(file.path(), 0, "missing required key experiment.scenario");
  }
  r.read("experiment.num_runs", cfg.num_runs);
  r.read_u64("experiment.run_seed_base", cfg.run_seed_base);
  if (const auto* e = r.get("experiment.init_seed")) {
    cfg.init_seed = r.integer(*e, "experiment.init_seed");
  }

  r.read("problem.m", cfg.m);
  r.read("problem.n", cfg.n);
  r.read("problem.noise_std", cfg.noise_std);
  r.read_u64("problem.seed", cfg.problem_seed);
  if (const auto* e = r.get("problem.file")) cfg.problem_file = e->value;

  if (const auto* e = r.get("solver.mu")) {
    if (e->value == "suggest") {
      cfg.mu.reset();
    } else {
      cfg.mu = r.number(*e, "solver.mu");
      if (!(*cfg.mu > 0.0)) r.fail(*e, "solver.mu", "must be positive");
    }
  } else {
    throw ConfigParseError(file.path(), 0, "missing required key solver.mu");
  }
  r.read("solver.eps", cfg.eps);
  if (const auto* e = r.get("solver.step_size")) cfg.steps = parse_steps(r, *e, "solver.step_size");
  r.read("solver.num_iters", cfg.num_iters);
  r.read("solver.record_stride", cfg.record_stride);

  const bool has_set = file.find("set.kind") != nullptr;
  if (has_set) {
    SetSpec set;
    const auto* e = r.get("set.kind");
    if (e->value == "box") {
      set.kind = FeasibleSet::Kind::box;
    } else if (e->value == "ball") {
      set.kind = FeasibleSet::Kind::ball;
    } else if (e->value == "whole_space") {
      set.kind = FeasibleSet::Kind::whole_space;
    } else {
      r.fail(*e, "set.kind", "expected box, ball or whole_space");
    }
    r.read("set.lower", set.lower);
    r.read("set.upper", set.upper);
    r.read("set.center", set.center);
    r.read("set.radius", set.radius);
    cfg.set = set;
  }

  r.read("output.csv", cfg.csv_path);
  if (const auto* e = r.get("output.svg")) cfg.svg_path = e->value;
  if (const auto* e = r.get("output.problem")) cfg.problem_out = e->value;
  r.read("output.bound_overlay", cfg.bound_overlay);
  r.read("output.trajectories", cfg.save_trajectories);

  r.reject_unknown();

  auto invalid = [&](const std::string& key, const std::string& what) {
    throw ConfigParseError(file.path(), r.line_of(key), key + ": " + what);
  };
  if (cfg.num_runs < 1) invalid("experiment.num_runs", "must be at least 1");
  if (!cfg.problem_file && (cfg.m < 1 || cfg.n < cfg.m)) invalid("problem.n", "requires n >= m >= 1");
  if (!(cfg.noise_std >= 0.0)) invalid("problem.noise_std", "must be nonnegative");
  if (!(cfg.eps > 0.0)) invalid("solver.eps", "must be positive");
  if (cfg.record_stride < 1) invalid("solver.record_stride", "must be at least 1");
  if (cfg.set) {
    if (cfg.set->kind == FeasibleSet::Kind::box && !(cfg.set->lower < cfg.set->upper)) {
      invalid("set.upper", "box requires lower < upper");
    }
    if (cfg.set->kind == FeasibleSet::Kind::ball && !(cfg.set->radius > 0.0)) {
      invalid("set.radius", "must be positive");
    }
  }
  if (cfg.scenario == ProblemMode::constrained) {
    if (!cfg.set) throw ConfigParseError(file.path(), 0, "constrained scenario needs a [set] section");
    if (cfg.set->kind == FeasibleSet::Kind::whole_space) {
      invalid("set.kind", "constrained scenario needs a set with finite diameter");
    }
  }
  return cfg;
}

}  // namespace zopt
