#pragma once

#include <string>
#include <vector>

#include "floq/floquet.hpp"

namespace floq {

struct VerifyCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  bool with_oracle = true;   // truncated-Fock cross-checks (N <= 2 only)
  int oracle_dim = 40;
  double u_block_fault = 1.0;  // test hook: scales the U block of F(0)
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass = true;

  void add(const std::string& name, double residual, double tolerance);
};

// Runs the module invariants on one configuration: symplecticity of the
// fundamental matrix, canonical condition, Weyl-Heisenberg algebra,
// det F, FLT periodicity, IOM conservation, coherent-state intelligence,
// frame consistency, and (optionally) oracle comparisons.
VerifyReport verify_configuration(const PeriodicConfiguration& config,
                                  const VerifyOptions& options = {});

}  // namespace floq
