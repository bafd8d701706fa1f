#pragma once

#include <iosfwd>

#include "msl/config.hpp"
#include "msl/oracle.hpp"

namespace msl {

struct RunArtifacts {
  std::vector<std::string> files;
  std::vector<std::string> warnings;  // e.g. bands skipped for contour overlap
};

/// Eigenvalue table + remainder diagnostics + constants -> out_dir.
RunArtifacts run_spectrum(const RunConfig& cfg);

/// Per-band per-cluster weight matrices, deviation report, block
/// reconstruction -> out_dir.
RunArtifacts run_weights(const RunConfig& cfg);

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct VerifySummary {
  std::vector<CriterionResult> criteria;
  bool pass = false;
  std::string firstFailure;
};

/// Full verification battery for the configured problem; one pass/fail line
/// per criterion on `progress` when given, machine-readable verify.json in
/// out_dir.
VerifySummary run_verify(const RunConfig& cfg, std::ostream* progress = nullptr);

}  // namespace msl
