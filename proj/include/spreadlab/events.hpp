#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "spreadlab/core.hpp"
#include "spreadlab/spread.hpp"

namespace spreadlab {

/// What one iteration did. Indices into the combined population R_t, which
/// lists the parent population in stored order followed by the offspring.
struct StepEvent {
  std::uint64_t iteration = 0;
  std::vector<std::size_t> parents;        // index into P_t, one per offspring
  std::vector<ObjectiveValue> offspring;   // offspring k sits at R index |P_t| + k
  std::vector<std::size_t> removed;        // R indices, in removal order
};

template <class Genome>
struct StepResult {
  std::vector<Genome> next;
  StepEvent event;
};

/// A property whose hypotheses held but whose conclusion failed on one step.
struct MonitorReport {
  std::string monitor_id;
  std::uint64_t iteration = 0;
  std::string severity = "violation";
  std::string detail;
  IntervalProfile before;
  IntervalProfile after;
  StepEvent event;
};

}  // namespace spreadlab
