#include "spreadlab/invariants.hpp"

#include <algorithm>
#include <ostream>

namespace spreadlab {

namespace {

MonitorReport make_report(const char* id, std::string detail) {
  MonitorReport r;
  r.monitor_id = id;
  r.detail = std::move(detail);
  return r;
}

bool on_single_front(std::span<const ObjectiveValue> values) {
  if (values.empty()) return false;
  const std::int64_t sum = values.front().f1 + values.front().f2;
  return std::all_of(values.begin(), values.end(),
                     [sum](const ObjectiveValue& v) { return v.f1 + v.f2 == sum; });
}

bool contains(std::span<const ObjectiveValue> values, const ObjectiveValue& v) {
  return std::find(values.begin(), values.end(), v) != values.end();
}

std::string key_text(const LexKey& k) {
  return "(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")";
}

}  // namespace

std::optional<MonitorReport> monitor_archive(std::span<const ObjectiveValue> prev,
                                             std::span<const ObjectiveValue> next) {
  if (!on_single_front(prev)) return std::nullopt;
  const auto before = distinct_objective_count(prev);
  const auto after = distinct_objective_count(next);
  if (after >= before) return std::nullopt;
  return make_report(monitor_id::kArchive, "distinct objective values dropped from " +
                                               std::to_string(before) + " to " +
                                               std::to_string(after));
}

std::optional<MonitorReport> monitor_min_gap(const IntervalProfile& prev,
                                             const IntervalProfile& next) {
  if (!prev.defined() || !next.defined()) return std::nullopt;
  if (next.min_gap >= prev.min_gap) return std::nullopt;
  return make_report(monitor_id::kMinGap, "X decreased from " + std::to_string(prev.min_gap) +
                                              " to " + std::to_string(next.min_gap));
}

std::optional<MonitorReport> monitor_lex_keys(const IntervalProfile& prev,
                                              const IntervalProfile& next) {
  if (!prev.defined() || !next.defined()) return std::nullopt;
  const auto min_before = lex_key_min(prev), min_after = lex_key_min(next);
  if (min_after > min_before)
    return make_report(monitor_id::kLexKeys, "(-X, N_min) increased from " +
                                                 key_text(min_before) + " to " +
                                                 key_text(min_after));
  const auto max_before = lex_key_max(prev), max_after = lex_key_max(next);
  if (max_after > max_before)
    return make_report(monitor_id::kLexKeys, "(Y, M_max) increased from " +
                                                 key_text(max_before) + " to " +
                                                 key_text(max_after));
  return std::nullopt;
}

std::optional<MonitorReport> monitor_easy_removal(const StepEvent& event,
                                                  const IntervalProfile& prev, std::size_t mu) {
  if (!prev.defined() || prev.min_gap <= 1) return std::nullopt;
  if (event.parents.size() != 1 || event.removed.size() != 1) return std::nullopt;
  const std::size_t removed = event.removed.front();
  if (removed == event.parents.front() || removed == mu) return std::nullopt;
  return make_report(monitor_id::kEasyRemoval,
                     "removed member " + std::to_string(removed) +
                         " is neither the parent nor the offspring");
}

std::optional<MonitorReport> monitor_border_persistence(const IntervalProfile& prev,
                                                        const IntervalProfile& next,
                                                        const AlphaBeta& target) {
  if (!prev.defined() || !next.defined()) return std::nullopt;
  if (prev.min_gap <= 1) return std::nullopt;
  if (!(lex_key_min(prev) > LexKey{-target.alpha, target.beta})) return std::nullopt;
  if (prev.min_gap != next.min_gap || prev.min_count != next.min_count) return std::nullopt;
  const std::int64_t x = prev.min_gap;
  if (prev.gaps.front() == x && next.gaps.front() != x)
    return make_report(monitor_id::kBorder, "minimal first interval left the lower border");
  if (prev.gaps.back() == x && next.gaps.back() != x)
    return make_report(monitor_id::kBorder, "minimal last interval left the upper border");
  return std::nullopt;
}

std::optional<MonitorReport> monitor_extremes(std::span<const ObjectiveValue> prev,
                                              std::span<const ObjectiveValue> next,
                                              std::int64_t n) {
  const ObjectiveValue low{0, n}, high{n, 0};
  if (!contains(prev, low) || !contains(prev, high)) return std::nullopt;
  if (contains(next, low) && contains(next, high)) return std::nullopt;
  return make_report(monitor_id::kExtremes, "an extreme objective value was lost");
}

MonitorSuite::MonitorSuite(MonitoredAlgorithm algorithm, bool steady_state,
                           MutationKind mutation)
    : algorithm_(algorithm), steady_state_(steady_state), mutation_(mutation) {}

void MonitorSuite::on_step(const StepContext& ctx, TrajectoryRecord& record) {
  auto emit = [&](std::optional<MonitorReport> r, const char* severity = "violation") {
    if (!r) return;
    r->iteration = ctx.event.iteration;
    r->severity = severity;
    r->before = ctx.prev_profile;
    r->after = ctx.next_profile;
    r->event = ctx.event;
    record.reports.push_back(std::move(*r));
  };

  if (algorithm_ == MonitoredAlgorithm::Nsga2) {
    emit(monitor_archive(ctx.prev, ctx.next), "advisory");
    return;
  }

  const auto n = static_cast<std::int64_t>(ctx.n);
  emit(monitor_archive(ctx.prev, ctx.next));
  emit(monitor_extremes(ctx.prev, ctx.next, n));
  if (!steady_state_) return;
  emit(monitor_min_gap(ctx.prev_profile, ctx.next_profile));
  if (mutation_ != MutationKind::OneBit) return;
  emit(monitor_lex_keys(ctx.prev_profile, ctx.next_profile));
  emit(monitor_easy_removal(ctx.event, ctx.prev_profile, ctx.mu));
  const auto mu = static_cast<std::int64_t>(ctx.mu);
  if (mu >= 2 && mu <= n)
    emit(monitor_border_persistence(ctx.prev_profile, ctx.next_profile, alpha_beta(n, mu)));
}

std::size_t count_violations(std::span<const MonitorReport> reports) {
  return static_cast<std::size_t>(std::count_if(
      reports.begin(), reports.end(),
      [](const MonitorReport& r) { return r.severity == "violation"; }));
}

nlohmann::json to_json(const IntervalProfile& profile) {
  nlohmann::json j;
  switch (profile.status) {
    case ProfileStatus::Defined: j["status"] = "defined"; break;
    case ProfileStatus::Duplicates: j["status"] = "duplicates"; break;
    case ProfileStatus::MissingExtremes: j["status"] = "missing-extremes"; break;
  }
  j["values"] = profile.sorted_values;
  if (profile.defined()) {
    j["gaps"] = profile.gaps;
    j["X"] = profile.min_gap;
    j["N_min"] = profile.min_count;
    j["Y"] = profile.max_gap;
    j["M_max"] = profile.max_count;
  }
  return j;
}

nlohmann::json to_json(const StepEvent& event) {
  nlohmann::json offspring = nlohmann::json::array();
  for (const auto& v : event.offspring) offspring.push_back({v.f1, v.f2});
  return {{"iteration", event.iteration},
          {"parents", event.parents},
          {"offspring", offspring},
          {"removed", event.removed}};
}

nlohmann::json to_json(const MonitorReport& report) {
  return {{"monitor", report.monitor_id}, {"iteration", report.iteration},
          {"severity", report.severity},  {"detail", report.detail},
          {"before", to_json(report.before)}, {"after", to_json(report.after)},
          {"event", to_json(report.event)}};
}

void write_reports_jsonl(std::ostream& out, std::span<const MonitorReport> reports) {
  for (const auto& r : reports) out << to_json(r).dump() << '\n';
}

}  // namespace spreadlab
