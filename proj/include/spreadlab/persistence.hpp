#pragma once

// Trajectory CSV, summary JSON and record serialization.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "spreadlab/harness.hpp"
#include "spreadlab/trajectory.hpp"

namespace spreadlab {

inline constexpr const char* kTrajectoryCsvHeader =
    "iteration,evaluations,X,N_min,Y,M_max,min_f1,max_f1,distinct,optimal";

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record);

/// Full record, including samples, drift counts and reports. Serializing
/// the same record twice yields the same bytes.
nlohmann::json to_json(const TrajectoryRecord& record);

/// Mean/median evaluations per milestone over the records that reached it.
nlohmann::json milestone_statistics(std::span<const TrajectoryRecord> records);

/// Config echo, milestone statistics, per-seed outcomes and, for probe runs,
/// the drift estimate.
nlohmann::json make_summary(const ExperimentConfig& cfg, std::span<const TrajectoryRecord> records);

}  // namespace spreadlab
