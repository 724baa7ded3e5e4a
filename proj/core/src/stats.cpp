#include "sift/stats.hpp"

#include <chrono>

namespace sift {

void evaluate_monitored(const FilterQuery& query, const Record& record, MonitoredOutcome& out) {
  using clock = std::chrono::steady_clock;
  const auto& predicates = query.predicates();
  const uint32_t n = query.size();
  out.resize(n);
  auto prev = clock::now();
  for (uint32_t i = 0; i < n; ++i) {
    out.pass_flags[i] = predicates[i].matches(record) ? 1 : 0;
    const auto now = clock::now();
    out.eval_nanos[i] =
        std::chrono::duration_cast<std::chrono::nanoseconds>(now - prev).count();
    prev = now;
  }
}

void accumulate(EpochStats& stats, const MonitoredOutcome& outcome) {
  if (stats.num_cut.size() != outcome.pass_flags.size())
    throw ConfigError("epoch stats width does not match outcome width");
  const size_t n = outcome.pass_flags.size();
  for (size_t i = 0; i < n; ++i) {
    stats.cost_nanos[i] += outcome.eval_nanos[i];
    if (!outcome.pass_flags[i]) ++stats.num_cut[i];
  }
  stats.monitored += 1;
}

}  // namespace sift
