#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpflow/algebra.hpp"

namespace lpflow {

/// Collection of matrix fields advanced together (e.g. {W}, {W, Theta},
/// {W, Theta, Chi}).  The fixed-point residual is taken over the
/// concatenation.
using FieldSet = std::vector<CMatrix>;

struct FixedPointConfig {
  double tol = 1e-13;   // relative residual target
  int max_iters = 100;  // Picard sweep budget
};

struct StageReport {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Raised when a stage equation fails to reach tolerance within the sweep
/// budget; carries the last report so callers can log and abort cleanly.
class StageFailure : public std::runtime_error {
 public:
  StageFailure(const std::string& message, StageReport rep)
      : std::runtime_error(message), report(rep) {}
  StageReport report;
};

/// Plain Picard iteration x <- map(x), stopping when
///   ||map(x) - x||_F <= tol * max(1, ||x||_F)
/// over the concatenated fields.  `state` holds the initial guess on entry
/// and the converged value on return.  Throws StageFailure when the budget
/// is exhausted.
StageReport fixed_point_solve(const std::function<FieldSet(const FieldSet&)>& map,
                              FieldSet& state, const FixedPointConfig& cfg);

}  // namespace lpflow
