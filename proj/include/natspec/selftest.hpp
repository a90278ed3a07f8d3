#pragma once

#include <string>
#include <vector>

#include "natspec/config.hpp"

namespace natspec {

struct SelftestCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelftestResult {
  std::vector<SelftestCheck> checks;
  std::vector<std::string> files;
  bool pass() const;
};

/// Runs a compact property suite and writes every artifact under `out_dir`.
/// Output depends only on the config (including its seed).
SelftestResult run_selftest(const Config& config, const std::string& out_dir);

}  // namespace natspec
