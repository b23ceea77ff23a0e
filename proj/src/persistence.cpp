#include "spreadlab/persistence.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "spreadlab/invariants.hpp"

namespace spreadlab {

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record) {
  out << kTrajectoryCsvHeader << '\n';
  for (const auto& s : record.samples) {
    out << s.iteration << ',' << s.evaluations << ',' << s.min_gap << ',' << s.min_count << ','
        << s.max_gap << ',' << s.max_count << ',' << s.min_f1 << ',' << s.max_f1 << ','
        << s.distinct << ',' << s.optimal << '\n';
  }
}

namespace {

nlohmann::json milestone_json(const std::optional<Milestone>& m) {
  if (!m) return nullptr;
  return {{"iteration", m->iteration}, {"evaluations", m->evaluations}};
}

nlohmann::json drift_json(const DriftCounts& d) {
  auto rows = [](const std::vector<GapIndexCounts>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& g : v) out.push_back({g.visits, g.down, g.up});
    return out;
  };
  return {{"c", d.c},           {"plus", rows(d.plus)},   {"minus", rows(d.minus)},
          {"jumps", d.jumps},   {"merges", d.merges},     {"escapes", d.escapes}};
}

}  // namespace

nlohmann::json to_json(const TrajectoryRecord& record) {
  nlohmann::json j;
  j["seed"] = record.seed;
  j["iterations"] = record.iterations;
  j["evaluations"] = record.evaluations;
  j["reached_optimal"] = record.reached_optimal;
  j["milestones"] = {{"distinct", milestone_json(record.distinct)},
                     {"extremes", milestone_json(record.extremes)},
                     {"min_gap_two", milestone_json(record.min_gap_two)},
                     {"optimal", milestone_json(record.optimal)}};
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : record.samples)
    samples.push_back({s.iteration, s.evaluations, s.min_gap, s.min_count, s.max_gap,
                       s.max_count, s.min_f1, s.max_f1, s.distinct, s.optimal});
  j["samples"] = std::move(samples);
  j["drift"] = record.drift ? drift_json(*record.drift) : nlohmann::json(nullptr);
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : record.reports) reports.push_back(to_json(r));
  j["reports"] = std::move(reports);
  j["final_values"] = record.final_values;
  return j;
}

nlohmann::json milestone_statistics(std::span<const TrajectoryRecord> records) {
  auto stats = [&](auto member) {
    std::vector<double> v;
    for (const auto& r : records)
      if ((r.*member)) v.push_back(static_cast<double>((r.*member)->evaluations));
    nlohmann::json j{{"reached", v.size()}, {"runs", records.size()}};
    if (v.empty()) {
      j["mean"] = nullptr;
      j["median"] = nullptr;
      return j;
    }
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    j["mean"] = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    j["median"] = v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
    j["max"] = v.back();
    return j;
  };
  return {{"distinct", stats(&TrajectoryRecord::distinct)},
          {"extremes", stats(&TrajectoryRecord::extremes)},
          {"min_gap_two", stats(&TrajectoryRecord::min_gap_two)},
          {"optimal", stats(&TrajectoryRecord::optimal)}};
}

nlohmann::json make_summary(const ExperimentConfig& cfg, std::span<const TrajectoryRecord> records) {
  nlohmann::json j;
  j["config"] = to_json(cfg);
  j["milestones"] = milestone_statistics(records);
  std::size_t reached = 0, violations = 0;
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : records) {
    reached += r.reached_optimal ? 1 : 0;
    const auto v = count_violations(r.reports);
    violations += v;
    runs.push_back({{"seed", r.seed},
                    {"reached_optimal", r.reached_optimal},
                    {"iterations", r.iterations},
                    {"evaluations", r.evaluations},
                    {"violations", v},
                    {"reports", r.reports.size()}});
  }
  j["runs"] = std::move(runs);
  j["reached_optimal"] = reached;
  j["violations"] = violations;
  if (cfg.drift_probe)
    j["drift"] = to_json(estimate_drift(records, static_cast<std::int64_t>(cfg.n), cfg.c));
  return j;
}

}  // namespace spreadlab
