#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vortexflow/kernels.hpp"
#include "vortexflow/report_io.hpp"

namespace vortexflow {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::vector<std::pair<std::string, double>> witnesses;
  std::string detail;  // first failing condition, empty on success
};

struct AcceptanceOptions {
  double example_c2 = 0.02;  // perturbed model used by the ledger criterion
  kernels::Exec exec = kernels::Exec::Parallel;
};

/// Criteria 1-12; criterion 13 repeats them and compares the serialized reports.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

/// A single criterion, 1..12.
CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});

/// Report for criteria results; contains no timings so repeated runs compare byte for byte.
io::Json acceptance_json(const std::vector<CriterionResult>& results);

/// One "PASS  [n] title" or "FAIL  [n] title: detail" line per criterion.
std::string acceptance_matrix(const std::vector<CriterionResult>& results);

}  // namespace vortexflow
