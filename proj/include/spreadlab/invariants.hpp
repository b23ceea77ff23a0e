#pragma once

// Online monitors for the SPEA2 interval properties. Each monitor stays inert
// unless its hypotheses hold for the step it is shown, and reports
// only when the conclusion fails.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spreadlab/events.hpp"
#include "spreadlab/spread.hpp"
#include "spreadlab/trajectory.hpp"
#include "spreadlab/variation.hpp"

namespace spreadlab {

namespace monitor_id {
inline constexpr const char* kArchive = "increasing-archive";
inline constexpr const char* kMinGap = "increasing-smallest-interval";
inline constexpr const char* kLexKeys = "lexicographic-interval-counts";
inline constexpr const char* kEasyRemoval = "easy-removal";
inline constexpr const char* kBorder = "small-intervals-stay-at-borders";
inline constexpr const char* kExtremes = "extremes-kept";
}  // namespace monitor_id

/// Fires when the number of distinct objective values drops. Inert unless
/// every member of `prev` lies on one OneMinMax front line f1 + f2 = const.
std::optional<MonitorReport> monitor_archive(std::span<const ObjectiveValue> prev,
                                             std::span<const ObjectiveValue> next);

std::optional<MonitorReport> monitor_min_gap(const IntervalProfile& prev,
                                             const IntervalProfile& next);

std::optional<MonitorReport> monitor_lex_keys(const IntervalProfile& prev,
                                              const IntervalProfile& next);

/// Steady-state only: with X > 1 the removed member must be the parent or
/// the offspring (R index mu).
std::optional<MonitorReport> monitor_easy_removal(const StepEvent& event,
                                                  const IntervalProfile& prev, std::size_t mu);

std::optional<MonitorReport> monitor_border_persistence(const IntervalProfile& prev,
                                                        const IntervalProfile& next,
                                                        const AlphaBeta& target);

std::optional<MonitorReport> monitor_extremes(std::span<const ObjectiveValue> prev,
                                              std::span<const ObjectiveValue> next,
                                              std::int64_t n);

enum class MonitoredAlgorithm { Spea2, Nsga2 };

/// Attaches the monitors whose hypotheses match the algorithm setup.
/// NSGA-II gets only the archive monitor, reporting as "advisory".
class MonitorSuite final : public StepObserver {
 public:
  MonitorSuite(MonitoredAlgorithm algorithm, bool steady_state, MutationKind mutation);

  void on_step(const StepContext& ctx, TrajectoryRecord& record) override;

 private:
  MonitoredAlgorithm algorithm_;
  bool steady_state_;
  MutationKind mutation_;
};

std::size_t count_violations(std::span<const MonitorReport> reports);

nlohmann::json to_json(const IntervalProfile& profile);
nlohmann::json to_json(const StepEvent& event);
nlohmann::json to_json(const MonitorReport& report);

/// One JSON object per line.
void write_reports_jsonl(std::ostream& out, std::span<const MonitorReport> reports);

}  // namespace spreadlab
