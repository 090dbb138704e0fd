#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kinterp/report.hpp"

namespace kinterp {

struct SuiteConfig {
  std::uint64_t seed = 7;
  int ppo = 64;
  double t_min = 1e-12;
  std::size_t workers = 1;
  bool timestamp = true;
  // Lattice specs for baseq; empty means the default set plus the L-inf control.
  std::vector<std::string> lattices;
  std::string baseline_file;  // empty: the checked-in default
  bool use_baselines = true;

  bool is_default_grid() const { return seed == 7 && ppo == 64 && t_min == 1e-12; }
  std::string describe() const;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// Throws Error(usage) for an unknown suite.
VerificationReport run_suite(const std::string& name, const SuiteConfig& cfg);

// 0 all PASS, 1 any FAIL; SKIPs are ignored.
int exit_code(const std::vector<VerificationReport>& rs);

std::string default_baseline_path();
// Window endpoints of every report, in the baseline file layout.
std::string baseline_json(const std::vector<VerificationReport>& rs);
// Adds one assertion per baselined window: both endpoints within 10%.
void compare_baselines(VerificationReport& r, const std::string& path);

}  // namespace kinterp
