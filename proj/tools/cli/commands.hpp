#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "dpgrad/suites.hpp"

namespace dpgrad::cli {

// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kCap = 3;

struct WittConfig {
  unsigned long p = 2;
  unsigned long n_max = 10;
  unsigned long alphabet = 2;
  std::string epsilon;  // empty: no threshold report
};

struct SchurConfig {
  std::vector<std::string> groups;
  std::size_t max_order = 0;
  std::size_t homology_cap = 16;
  bool parallel = true;
};

struct VerifyConfig {
  std::string suite;
  SuiteOptions options;
  bool failures_only = false;
};

struct GradientConfig {
  std::string spec_path;
  std::string format = "json";
  bool parallel = true;
};

struct BoundsConfig {
  std::string a, b;
  bool parallel = true;
  Limits limits;
};

struct PresentConfig {
  std::string action;  // enumerate, subgroup, abelianize, snf
  std::string input;
  std::string subgroup;
  std::size_t max_cosets = 1'000'000;
  std::size_t tietze_effort = 50;
};

// Each command writes its report to `out` and returns an exit code. Library
// errors propagate to the caller.
int cmd_witt(const WittConfig& cfg, std::ostream& out);
int cmd_schur(const SchurConfig& cfg, std::ostream& out);
int cmd_verify(const VerifyConfig& cfg, std::ostream& out);
int cmd_gradient(const GradientConfig& cfg, std::ostream& out);
int cmd_bounds(const BoundsConfig& cfg, std::ostream& out);
int cmd_present(const PresentConfig& cfg, std::ostream& out);

// A path to a JSON group file, or a name from the small-group table.
FiniteGroup resolve_group(const std::string& text, const Limits& limits = {});

}  // namespace dpgrad::cli
