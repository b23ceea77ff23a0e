#include "spreadlab/trajectory.hpp"

#include <algorithm>

namespace spreadlab {

ProfileSample make_sample(const IntervalProfile& profile, std::uint64_t iteration,
                          std::uint64_t evaluations, std::size_t n, std::size_t mu) {
  ProfileSample s;
  s.iteration = iteration;
  s.evaluations = evaluations;
  if (profile.defined()) {
    s.min_gap = profile.min_gap;
    s.min_count = static_cast<std::int64_t>(profile.min_count);
    s.max_gap = profile.max_gap;
    s.max_count = static_cast<std::int64_t>(profile.max_count);
  }
  if (!profile.sorted_values.empty()) {
    s.min_f1 = profile.sorted_values.front();
    s.max_f1 = profile.sorted_values.back();
  }
  s.distinct = static_cast<std::int64_t>(profile.sorted_values.size());
  s.optimal = is_optimal_spread(profile, static_cast<std::int64_t>(n), mu) ? 1 : 0;
  return s;
}

namespace detail {

bool note_milestones(const IntervalProfile& profile, std::size_t n, std::size_t mu,
                     Milestone at, TrajectoryRecord& record) {
  const auto& v = profile.sorted_values;
  const auto sn = static_cast<std::int64_t>(n);
  if (!record.distinct && v.size() == std::min(mu, n + 1)) record.distinct = at;
  if (!record.extremes && !v.empty() && v.front() == 0 && v.back() == sn) record.extremes = at;
  if (!record.min_gap_two && profile.defined() && profile.min_gap >= 2) record.min_gap_two = at;
  const bool optimal = is_optimal_spread(profile, sn, mu);
  if (!record.optimal && optimal) record.optimal = at;
  return optimal;
}

}  // namespace detail
}  // namespace spreadlab
