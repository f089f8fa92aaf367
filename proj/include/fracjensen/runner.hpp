#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fracjensen/jensen.hpp"
#include "fracjensen/job.hpp"

namespace fracjensen::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitNumerical = 2,
  kExitViolated = 3,
  kExitHypothesisFailed = 4,
};

struct CsvRow {
  double alpha = 0.0;
  double m = 1.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double quadrature_error = 0.0;
  jensen::Verdict verdict = jensen::Verdict::Holds;
};

inline constexpr const char* kCsvHeader = "alpha,m,lhs,rhs,slack,quadrature_error,verdict";

/// Header plus one LF-terminated row each; numbers with 17 significant digits.
void emit_csv(const std::vector<CsvRow>& rows, std::ostream& out);

/// Runs the job. Data goes to `out` (or job.output_path), diagnostics to `log`.
/// Library errors are mapped to exit codes rather than propagated.
int execute(const JobSpec& job, std::ostream& out, std::ostream& log);

}  // namespace fracjensen::cli
