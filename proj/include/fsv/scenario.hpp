#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fsv/fhn.hpp"

namespace fsv {

// Minimal TOML subset: [section] headers, scalar/array values, comments.
struct TomlValue {
  std::variant<double, bool, std::string, std::vector<double>,
               std::vector<std::string>>
      v;
  double num() const;
  bool boolean() const;
  const std::string& str() const;
  const std::vector<double>& nums() const;
  const std::vector<std::string>& strs() const;
};

class TomlTable {
 public:
  static TomlTable parse_file(const std::string& path);
  static TomlTable parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  const TomlValue& get(const std::string& section, const std::string& key) const;
  double num(const std::string& section, const std::string& key) const;
  double num_or(const std::string& section, const std::string& key,
                double fallback) const;
  std::string str_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  std::vector<std::string> sections_with_prefix(const std::string& prefix) const;
  void set(const std::string& section, const std::string& key, TomlValue v);
  const std::map<std::string, std::map<std::string, TomlValue>>& raw() const {
    return t_;
  }

 private:
  std::map<std::string, std::map<std::string, TomlValue>> t_;
};

struct ConeSpec {
  std::string name;
  std::string branch;
  std::string end = "tail";  // tail | head, relative to the flow direction
  bool unstable = true;
  int side = +1;
  double m = 1.0, ell = 0.0;
  Interval face_y;
  bool face_y_given = false;
  int partitions = 32;
  double slab = 0.0;
};

struct DropSpecFile {
  std::string name;
  std::string source_cone;
  std::string target_branch;
  std::string target_cone;  // optional stable cone
  int ent_side = +1;
  double T = 0.0;  // 0 = derive numerically
  double dt = 1e-4;
  int order = 6;
  int w_cells = 12;
  int b_cells = 2;
  int c_cells = 4;
  int max_refine = 9;
  Interval face_w;
  bool face_w_given = false;
  Interval y_window;
  bool y_window_given = false;
};

struct SlowBlockSpec {
  std::string name;
  std::string branch;
  double host_w = 0.0, host_H = 0.0;
  double y0 = 0.0, delta = 0.0;
  double m_u = 1.0;
  double u_ref = 0.0, w_ref = 0.0;
  std::string exit_cone;  // cone whose face plays the fiber exit
};

struct Scenario {
  FHNParams params;
  double eps0 = 0.0;
  std::vector<double> eps_partition;  // contiguous endpoints incl. 0
  double chart_scale = 0.1;
  int refine_depth = 3;
  int threads = 1;
  std::string kind = "periodic";
  std::map<std::string, struct ChainParamsNamed*> dummy;  // unused
  std::vector<struct BranchSpec> branches;
  std::vector<ConeSpec> cones;
  std::vector<DropSpecFile> drops;
  std::vector<SlowBlockSpec> slow_blocks;
  std::string output_dir = ".";
  TomlTable raw;
};

struct BranchSpec {
  std::string name;
  double w_start = 0, w_end = 0;
  int q = +1;
  double u_guess = 0;
  double h_bar = 0, H = 0, r_a = 0, r_b = 0, d_a = 0, d_b = 0;
  double m_u = 1, m_s = 1, chi = 1;
  double ss5_slab = 0;
};

Scenario load_scenario(const std::string& path);
Scenario scenario_from_table(TomlTable t);

// apply flat "[subinterval.K]" overrides (dotted keys) onto a copy
Scenario scenario_with_overrides(const Scenario& base, int subinterval_index);

}  // namespace fsv
