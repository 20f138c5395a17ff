#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "akde/parallel.hpp"

namespace akde {

struct VerifyOptions {
  bool quick = false;          // reduced replication counts, wider tolerances
  double tolerance_scale = 1.0;  // test hook: scales every tolerance
  std::string only;            // run a single criterion by name; empty = all
  std::string cli_path;        // binary for the cli-fidelity criterion
  std::uint64_t seed = 1;
  Execution exec = default_execution();
};

struct CriterionResult {
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  std::vector<std::string> details;  // measured values, one line each
};

// Runs the acceptance criteria and reports pass/fail with measurements.
// Criteria are deterministic: fixed seeds, fixed grids, order-independent
// reductions. Unknown `only` names raise std::invalid_argument.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options);

// Writes the canonical 300-observation fixture (log-normal, mu = 1,
// sigma = 1, its own fixed stream) to `path`, one value per line, shortest
// round-trip formatting; byte-identical on every run.
void write_fixture(const std::string& path);

}  // namespace akde
