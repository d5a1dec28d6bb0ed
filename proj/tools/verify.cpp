#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fsv/certificate.hpp"

namespace {

int fail_with(const fsv::Error& e) {
  std::cerr << "error: " << fsv::error_name(e.code()) << ": " << e.what() << "\n";
  return e.code() == fsv::ErrorCode::ScenarioNotFound ? 2 : 1;
}

void write_file(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path);
  out << text;
}

std::string trace_csv(
    const std::vector<std::pair<double, std::vector<fsv::Interval>>>& rows) {
  std::ostringstream ss;
  ss.precision(17);
  ss << "t,axis,lo,hi\n";
  const char* axes[] = {"u", "v", "w"};
  for (const auto& [t, box] : rows)
    for (size_t i = 0; i < box.size() && i < 3; ++i)
      ss << t << ',' << axes[i] << ',' << box[i].lo() << ',' << box[i].hi() << '\n';
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"validated fast-slow orbit verification"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string branch_name;
  std::string drop_name;
  std::string trace_path;
  int slices_override = 0;
  int threads = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_path, "scenario TOML file")->required();
    cmd->add_option("--threads", threads, "worker threads for drop slices");
  };

  auto* cmd_chain = app.add_subcommand("chain", "verify slow shadowing chains");
  add_common(cmd_chain);
  cmd_chain->add_option("--branch", branch_name, "verify only this branch");

  auto* cmd_cones = app.add_subcommand("cones", "verify cone extensions");
  add_common(cmd_cones);

  auto* cmd_drop = app.add_subcommand("drop", "verify a single drop covering");
  add_common(cmd_drop);
  cmd_drop->add_option("--drop", drop_name, "drop name (defaults to all)");
  cmd_drop->add_option("--slices", slices_override, "override face slice count");
  cmd_drop->add_option("--trace", trace_path, "write per-step hull CSV here");

  auto* cmd_certify = app.add_subcommand("certify", "full pipeline + certificate");
  add_common(cmd_certify);

  auto* cmd_cont = app.add_subcommand("continuation", "run the eps partition");
  add_common(cmd_cont);

  CLI11_PARSE(app, argc, argv);

  try {
    fsv::Scenario sc = fsv::load_scenario(scenario_path);
    if (threads > 0) sc.threads = threads;
    if (slices_override > 0)
      for (auto& d : sc.drops) d.w_cells = slices_override;
    if (!branch_name.empty()) {
      std::vector<fsv::BranchSpec> keep;
      for (const auto& b : sc.branches)
        if (b.name == branch_name) keep.push_back(b);
      if (keep.empty()) {
        std::cerr << "error: branch '" << branch_name << "' not in scenario\n";
        return 1;
      }
      sc.branches = keep;
      sc.cones.clear();
      sc.drops.clear();
      sc.slow_blocks.clear();
    }
    const fsv::Interval eps_range(0.0, sc.eps0);

    if (*cmd_chain) {
      fsv::PipelineResult pr;
      pr.sc = sc;
      pr.eps_range = eps_range;
      pr.ok = true;
      fsv::run_chains(pr);
      const std::string csv = fsv::chain_summary_csv(pr);
      std::cout << csv;
      write_file(sc.output_dir + "/chain_summary.csv", csv);
      for (const auto& [name, c] : pr.chains)
        std::cout << "chain " << name << ": " << (c.ok ? "verified" : "FAILED")
                  << " (" << c.blocks.size() << " blocks, " << c.build_seconds
                  << " s)\n";
      return pr.ok ? 0 : 1;
    }

    if (*cmd_cones) {
      fsv::PipelineResult pr;
      pr.sc = sc;
      pr.eps_range = eps_range;
      pr.ok = true;
      fsv::run_chains(pr);
      fsv::run_cones(pr);
      for (const auto& [name, c] : pr.cones)
        std::cout << "cone " << name << ": " << (c.ok ? "verified" : "FAILED")
                  << " m=" << c.m << " ell=" << c.ell << " T_bound=" << c.T_bound
                  << " margin=" << c.worst_margin_cone << "\n";
      return pr.ok ? 0 : 1;
    }

    if (*cmd_drop) {
      fsv::PipelineResult pr;
      pr.sc = sc;
      pr.eps_range = eps_range;
      pr.ok = true;
      fsv::run_chains(pr);
      fsv::run_cones(pr);
      std::vector<std::pair<double, std::vector<fsv::Interval>>> trace;
      fsv::run_drops(pr, trace_path.empty() ? nullptr : &trace, drop_name);
      if (!trace_path.empty()) write_file(trace_path, trace_csv(trace));
      bool ok = true;
      for (const auto& [name, d] : pr.drops) {
        std::cout << "drop " << name << ": " << (d.ok ? "verified" : "FAILED");
        if (!d.ok) std::cout << " (" << d.fail_cond << ")";
        std::cout << " [" << d.seconds << " s]\n";
        ok = ok && d.ok;
      }
      return ok ? 0 : 1;
    }

    if (*cmd_certify) {
      fsv::PipelineResult pr = fsv::run_pipeline(sc, eps_range, true);
      const std::string cert = fsv::assemble_certificate(pr);
      const std::string path = sc.output_dir + "/certificate.json";
      write_file(path, cert);
      write_file(sc.output_dir + "/chain_summary.csv", fsv::chain_summary_csv(pr));
      std::cout << "certificate written to " << path << "\n";
      return 0;
    }

    if (*cmd_cont) {
      fsv::ContinuationResult res = fsv::run_continuation(sc);
      for (size_t k = 0; k < res.certificates.size(); ++k) {
        const std::string path =
            sc.output_dir + "/certificate_sub" + std::to_string(k + 1) + ".json";
        write_file(path, res.certificates[k]);
        std::cout << "subinterval " << (k + 1) << ": "
                  << (res.passed[k] ? "verified" : "FAILED") << "\n";
      }
      if (res.failed_subinterval >= 0) {
        std::cerr << "continuation gap at subinterval " << res.failed_subinterval
                  << "\n";
        return 1;
      }
      std::cout << res.merged_statement << "\n";
      return 0;
    }
  } catch (const fsv::Error& e) {
    return fail_with(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
