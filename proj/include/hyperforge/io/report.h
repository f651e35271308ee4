#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperforge/gaussian_op.h"
#include "hyperforge/oracle/verify.h"
#include "hyperforge/phase_poly.h"

namespace hyperforge::io {

struct VerifyCase {
  std::string group;
  std::vector<ModeId> modes;
  PhasePolynomial before;
  GaussianOp op;
  // How close the measured fidelity must come to the target.
  double budget = 5e-3;
  // Target is the closed-form prediction instead of 1.
  bool against_formula = false;
};

struct ReportEntry {
  std::string rule;
  std::string group;
  nlohmann::json params;
  nlohmann::json state;
  double squeezing = 0.0;
  int cutoff = 0;
  double fidelity = 0.0;
  std::optional<double> formula_prediction;
  double leakage = 0.0;
  double error_estimate = 0.0;
  double target = 1.0;
  double budget = 0.0;
  std::string backend;
  bool passed = false;
  std::string error;  // error code name when the check could not run
};

struct VerificationReport {
  std::vector<ReportEntry> entries;
  std::size_t passed() const;
  std::size_t failed() const;
};

// Random multilinear states on at most three modes, one case per rule and
// state. Parameters stay inside the ranges where the finite-squeezing
// rules are accurate at r = 2.
std::vector<VerifyCase> rule_sweep(std::uint64_t seed = 20240917, std::size_t states = 20);

// Xdisp on {ABC:1} across the squeezing grid, target exp(-s^2 e^{-2r} / 2).
std::vector<VerifyCase> fidelity_law_cases(const std::vector<double>& strengths = {0.25, 0.5, 1.0});

// Keeps cases whose op name is in the comma-separated list; "all" keeps all.
std::vector<VerifyCase> select_rules(std::vector<VerifyCase> cases, const std::string& rules);

ReportEntry run_case(const VerifyCase& c, double r, int cutoff, const oracle::VerifyOptions& opts = {});
VerificationReport run_report(const std::vector<VerifyCase>& cases, double r, int cutoff,
                              const oracle::VerifyOptions& opts = {});

nlohmann::json report_to_json(const VerificationReport& rep);
std::string report_table(const VerificationReport& rep);

// HYPERFORGE_R and HYPERFORGE_CUTOFF, falling back to the given values.
double env_squeezing(double fallback);
int env_cutoff(int fallback);

}  // namespace hyperforge::io
