#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "msdiff/collision.hpp"
#include "msdiff/mixture.hpp"
#include "msdiff/quadrature.hpp"

namespace msdiff {

inline constexpr double kOracleAgreementTolerance = 1e-4;

// One closed-form vs quadrature comparison of a friction coefficient.
struct OracleCheckRow {
  std::string pair;   // "A-B"
  std::string kernel; // "config", "n<k>" (unit a_k only) or "n1_series"
  double closed_form = 0.0;
  double oracle = 0.0;
  double rel_diff = 0.0;
  bool agrees = false;
};

// For every unordered species pair: the configured kernel, each single-term
// kernel up to its truncation order, and the generic-series value at n = 1
// against the same quadrature as the n1 row.
std::vector<OracleCheckRow> oracle_check(const MixtureSpec& spec, const AnalyticKineticKernel& kernel,
                                         const AngularKernelSet& angular, const QuadratureConfig& q);

void write_oracle_check(std::ostream& os, const std::vector<OracleCheckRow>& rows);

} // namespace msdiff
