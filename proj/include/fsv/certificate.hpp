#pragma once

#include <map>

#include "fsv/covering.hpp"
#include "fsv/scenario.hpp"
#include "fsv/slowdyn.hpp"

namespace fsv {

struct SlowBlockResult {
  SlowBlockSpec spec;
  FastSaddleBlock host;
  SignReport signs;
  ConeReport cones;
  SlowIsolatingBlock iso;
  FiberExitReport fiber;
  double fiber_cone_margin = 0.0;  // worst slab margin of the m_u-cone family
  double fiber_cone_kappa = 0.0;
  bool fiber_cone_ok = false;
  bool ok = false;
};

struct PipelineResult {
  Scenario sc;
  Interval eps_range{0.0};
  std::map<std::string, ShadowChain> chains;
  std::map<std::string, ConeExtension> cones;
  std::map<std::string, DropVerdict> drops;
  std::map<std::string, double> derived_T;
  std::map<std::string, SlowBlockResult> slow_blocks;
  bool ok = false;
  std::string first_failure;
};

// individual pipeline stages
void run_chains(PipelineResult& pr);
void run_cones(PipelineResult& pr);
void run_drops(PipelineResult& pr,
               std::vector<std::pair<double, std::vector<Interval>>>* trace = nullptr,
               const std::string& only_drop = "");
void run_slow_blocks(PipelineResult& pr);

PipelineResult run_pipeline(const Scenario& sc, const Interval& eps_range,
                            bool with_drops = true);

// machine-checkable record of one existence statement
std::string assemble_certificate(const PipelineResult& pr);  // JSON text
bool revalidate_certificate(const std::string& json_text, std::string* why = nullptr);

struct ContinuationResult {
  std::vector<std::string> certificates;  // one JSON per subinterval
  std::vector<bool> passed;
  int failed_subinterval = -1;  // -1 when all pass
  std::string merged_statement;
};

ContinuationResult run_continuation(const Scenario& sc);

// Table-style one-row-per-branch summary
std::string chain_summary_csv(const PipelineResult& pr);

// numeric probe for a Drop flight time (non-rigorous; result is recorded)
double derive_drop_time(const Fhn& sys, double eps_probe,
                        const std::vector<double>& x0,
                        const FastSaddleBlock& head, double dt,
                        double T_cap = 400.0);

}  // namespace fsv
