#include "fsv/scenario.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace fsv {

double TomlValue::num() const {
  if (auto* d = std::get_if<double>(&v)) return *d;
  throw Error(ErrorCode::DomainError, "TOML: expected a number");
}
bool TomlValue::boolean() const {
  if (auto* b = std::get_if<bool>(&v)) return *b;
  throw Error(ErrorCode::DomainError, "TOML: expected a boolean");
}
const std::string& TomlValue::str() const {
  if (auto* s = std::get_if<std::string>(&v)) return *s;
  throw Error(ErrorCode::DomainError, "TOML: expected a string");
}
const std::vector<double>& TomlValue::nums() const {
  if (auto* a = std::get_if<std::vector<double>>(&v)) return *a;
  throw Error(ErrorCode::DomainError, "TOML: expected a number array");
}
const std::vector<std::string>& TomlValue::strs() const {
  if (auto* a = std::get_if<std::vector<std::string>>(&v)) return *a;
  throw Error(ErrorCode::DomainError, "TOML: expected a string array");
}

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_str = !in_str;
    if (line[i] == '#' && !in_str) return line.substr(0, i);
  }
  return line;
}

TomlValue parse_scalar(const std::string& tok) {
  TomlValue out;
  if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') {
    out.v = tok.substr(1, tok.size() - 2);
    return out;
  }
  if (tok == "true") { out.v = true; return out; }
  if (tok == "false") { out.v = false; return out; }
  try {
    size_t used = 0;
    const double d = std::stod(tok, &used);
    if (used == tok.size()) { out.v = d; return out; }
  } catch (...) {}
  throw Error(ErrorCode::DomainError, "TOML: cannot parse value '" + tok + "'");
}

TomlValue parse_value(const std::string& raw) {
  const std::string tok = trim(raw);
  if (!tok.empty() && tok.front() == '[') {
    if (tok.back() != ']')
      throw Error(ErrorCode::DomainError, "TOML: unterminated array");
    std::vector<double> nums;
    std::vector<std::string> strs;
    bool any_str = false;
    std::string body = tok.substr(1, tok.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string it = trim(item);
      if (it.empty()) continue;
      TomlValue v = parse_scalar(it);
      if (auto* s = std::get_if<std::string>(&v.v)) {
        any_str = true;
        strs.push_back(*s);
      } else {
        nums.push_back(v.num());
      }
    }
    TomlValue out;
    if (any_str) out.v = strs;
    else out.v = nums;
    return out;
  }
  return parse_scalar(tok);
}

}  // namespace

TomlTable TomlTable::parse_string(const std::string& text) {
  TomlTable t;
  std::stringstream ss(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error(ErrorCode::DomainError,
                    "TOML: bad section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      t.t_[section];
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::DomainError,
                  "TOML: missing '=' at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    t.t_[section][key] = parse_value(line.substr(eq + 1));
  }
  return t;
}

TomlTable TomlTable::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::ScenarioNotFound, "scenario file not found: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

bool TomlTable::has(const std::string& section, const std::string& key) const {
  auto it = t_.find(section);
  return it != t_.end() && it->second.count(key) > 0;
}

const TomlValue& TomlTable::get(const std::string& section,
                                const std::string& key) const {
  auto it = t_.find(section);
  if (it == t_.end() || !it->second.count(key))
    throw Error(ErrorCode::DomainError,
                "scenario: missing [" + section + "] " + key);
  return it->second.at(key);
}

double TomlTable::num(const std::string& section, const std::string& key) const {
  return get(section, key).num();
}

double TomlTable::num_or(const std::string& section, const std::string& key,
                         double fallback) const {
  return has(section, key) ? num(section, key) : fallback;
}

std::string TomlTable::str_or(const std::string& section, const std::string& key,
                              const std::string& fallback) const {
  return has(section, key) ? get(section, key).str() : fallback;
}

std::vector<std::string> TomlTable::sections_with_prefix(
    const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& [name, _] : t_)
    if (name.rfind(prefix, 0) == 0) out.push_back(name);
  return out;
}

void TomlTable::set(const std::string& section, const std::string& key,
                    TomlValue v) {
  t_[section][key] = std::move(v);
}

namespace {

Interval interval_of(const TomlValue& v) {
  if (auto* d = std::get_if<double>(&v.v)) return Interval(*d);
  const auto& a = v.nums();
  if (a.size() != 2)
    throw Error(ErrorCode::DomainError, "scenario: interval needs [lo, hi]");
  return Interval(a[0], a[1]);
}

}  // namespace

Scenario scenario_from_table(TomlTable t) {
  Scenario sc;
  sc.params.a = interval_of(t.get("system", "a"));
  sc.params.c = interval_of(t.get("system", "c"));
  sc.params.gamma = interval_of(t.get("system", "gamma"));
  sc.params.delta = interval_of(t.get("system", "delta"));
  sc.params.validate();

  sc.eps0 = t.num("eps", "eps0");
  if (t.has("eps", "partition")) {
    sc.eps_partition = t.get("eps", "partition").nums();
    if (sc.eps_partition.size() < 2 || sc.eps_partition.front() != 0.0)
      throw Error(ErrorCode::DomainError, "scenario: partition must start at 0");
    for (size_t i = 0; i + 1 < sc.eps_partition.size(); ++i)
      if (!(sc.eps_partition[i] < sc.eps_partition[i + 1]))
        throw Error(ErrorCode::ContinuationGap,
                    "scenario: partition not strictly increasing");
  }
  sc.chart_scale = t.num_or("chart", "scale", 0.1);
  sc.refine_depth = static_cast<int>(t.num_or("chart", "refine_depth", 3));
  sc.threads = static_cast<int>(t.num_or("chart", "threads", 1));
  sc.kind = t.str_or("certificate", "kind", "periodic");
  sc.output_dir = t.str_or("output", "dir", ".");

  for (const auto& name : t.sections_with_prefix("branch.")) {
    BranchSpec b;
    b.name = name.substr(7);
    b.w_start = t.num(name, "w_start");
    b.w_end = t.num(name, "w_end");
    b.q = static_cast<int>(t.num(name, "q"));
    b.u_guess = t.num(name, "u_guess");
    b.h_bar = t.num(name, "h_bar");
    b.H = t.num(name, "H");
    b.r_a = t.num(name, "r_a");
    b.r_b = t.num(name, "r_b");
    b.d_a = t.num(name, "d_a");
    b.d_b = t.num(name, "d_b");
    b.m_u = t.num(name, "m_u");
    b.m_s = t.num(name, "m_s");
    b.chi = t.num(name, "chi");
    b.ss5_slab = t.num_or(name, "ss5_slab", 0.0);
    sc.branches.push_back(b);
  }
  for (const auto& name : t.sections_with_prefix("cone.")) {
    ConeSpec c;
    c.name = name.substr(5);
    c.branch = t.get(name, "branch").str();
    c.end = t.str_or(name, "end", "tail");
    c.unstable = t.str_or(name, "type", "unstable") == "unstable";
    c.side = static_cast<int>(t.num_or(name, "side", +1));
    c.m = t.num(name, "m");
    c.ell = t.num(name, "ell");
    if (t.has(name, "face_y")) {
      c.face_y = interval_of(t.get(name, "face_y"));
      c.face_y_given = true;
    }
    c.partitions = static_cast<int>(t.num_or(name, "partitions", 32));
    c.slab = t.num_or(name, "slab", 0.0);
    sc.cones.push_back(c);
  }
  for (const auto& name : t.sections_with_prefix("drop.")) {
    DropSpecFile d;
    d.name = name.substr(5);
    d.source_cone = t.get(name, "source").str();
    d.target_branch = t.get(name, "target_branch").str();
    d.target_cone = t.str_or(name, "target_cone", "");
    d.ent_side = static_cast<int>(t.num_or(name, "ent_side", +1));
    d.T = t.num_or(name, "T", 0.0);
    d.dt = t.num_or(name, "dt", 1e-4);
    d.order = static_cast<int>(t.num_or(name, "order", 6));
    d.w_cells = static_cast<int>(t.num_or(name, "w_cells", 12));
    d.b_cells = static_cast<int>(t.num_or(name, "b_cells", 2));
    d.c_cells = static_cast<int>(t.num_or(name, "c_cells", 4));
    d.max_refine = static_cast<int>(t.num_or(name, "max_refine", 9));
    if (t.has(name, "face_w")) {
      d.face_w = interval_of(t.get(name, "face_w"));
      d.face_w_given = true;
    }
    if (t.has(name, "y_window")) {
      d.y_window = interval_of(t.get(name, "y_window"));
      d.y_window_given = true;
    }
    sc.drops.push_back(d);
  }
  for (const auto& name : t.sections_with_prefix("slowblock.")) {
    SlowBlockSpec s;
    s.name = name.substr(10);
    s.branch = t.get(name, "branch").str();
    s.host_w = t.num(name, "host_w");
    s.host_H = t.num(name, "host_H");
    s.y0 = t.num(name, "y0");
    s.delta = t.num(name, "delta");
    s.m_u = t.num(name, "m_u");
    s.u_ref = t.num_or(name, "u_ref", 0.0);
    s.w_ref = t.num_or(name, "w_ref", 0.0);
    s.exit_cone = t.str_or(name, "exit_cone", "");
    sc.slow_blocks.push_back(s);
  }
  sc.raw = std::move(t);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  return scenario_from_table(TomlTable::parse_file(path));
}

Scenario scenario_with_overrides(const Scenario& base, int subinterval_index) {
  TomlTable t = base.raw;
  const std::string sec = "subinterval." + std::to_string(subinterval_index);
  for (const auto& [name, kv] : base.raw.raw()) {
    if (name != sec) continue;
    for (const auto& [dotted, val] : kv) {
      const size_t pos = dotted.rfind('.');
      if (pos == std::string::npos)
        throw Error(ErrorCode::DomainError,
                    "scenario: override key must be section.key");
      t.set(dotted.substr(0, pos), dotted.substr(pos + 1), val);
    }
  }
  return scenario_from_table(std::move(t));
}

}  // namespace fsv
