#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vortwave {

struct CheckResult {
  std::string group;   // kernel, phase, hamiltonian, flattening, linear, reduced, wave
  std::string name;
  bool pass = false;
  double value = 0.0;  // measured quantity (error or ratio)
  double limit = 0.0;  // threshold it was compared against
  std::string note;
};

struct VerifyOptions {
  std::uint64_t seed = 20240607;
  std::vector<std::string> only;  // empty: every group
  int samples = 10;               // random states per property
};

std::vector<std::string> verify_groups();
std::vector<CheckResult> run_verify(const VerifyOptions &opt);
/// One line per check plus a summary line; no timings so reruns are byte-identical.
std::string format_report(const std::vector<CheckResult> &results);

}  // namespace vortwave
