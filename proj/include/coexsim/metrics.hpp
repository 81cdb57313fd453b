#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace coexsim {

// The five per-mode scheduler statistics, computed over long-run per-UE
// rates. std_dev is the population standard deviation (divide by N): the
// user set is the whole population, not a sample.
struct SchedulerStats {
  int num_ues = 0;
  int users_below_threshold = 0;
  double system_throughput_bps = 0.0;
  double max_throughput_bps = 0.0;
  double min_throughput_bps = 0.0;
  double std_dev_bps = 0.0;
};

inline SchedulerStats compute_stats(const std::map<int, double>& long_run_rates_bps,
                                    double r_min_bps) {
  if (long_run_rates_bps.empty())
    throw std::invalid_argument("compute_stats: need at least one UE");

  SchedulerStats stats;
  stats.num_ues = static_cast<int>(long_run_rates_bps.size());
  stats.max_throughput_bps = -std::numeric_limits<double>::infinity();
  stats.min_throughput_bps = std::numeric_limits<double>::infinity();
  for (const auto& [ue, rate] : long_run_rates_bps) {
    if (rate < r_min_bps) ++stats.users_below_threshold;  // violation is strict <
    stats.system_throughput_bps += rate;
    stats.max_throughput_bps = std::max(stats.max_throughput_bps, rate);
    stats.min_throughput_bps = std::min(stats.min_throughput_bps, rate);
  }
  const double mean = stats.system_throughput_bps / stats.num_ues;
  double sq = 0.0;
  for (const auto& [ue, rate] : long_run_rates_bps) sq += (rate - mean) * (rate - mean);
  stats.std_dev_bps = std::sqrt(sq / stats.num_ues);
  return stats;
}

}  // namespace coexsim
