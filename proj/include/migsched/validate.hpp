#pragma once

#include <string>
#include <vector>

#include "migsched/schedule.hpp"

namespace migsched {

struct Violation {
  /// 1: slice shared by overlapping tasks; 2: invalid instance set;
  /// 3: reconfiguration timing or lifecycle.
  int constraint = 0;
  double time = 0;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

/// Checks a schedule against the three feasibility constraints. Constraint 3
/// replays the reconfiguration events as instance lifetimes: each task must
/// run on a created, not yet destroyed instance, creations need their slices
/// free of other live instances, and events run one at a time with the
/// tabulated durations.
ValidationReport validate(const Schedule& schedule, double tolerance = 1e-9);

}  // namespace migsched
