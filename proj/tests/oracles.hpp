// Independent reference implementations used to check the library. These
// stay deliberately naive (full enumeration,two-pass formulas) and must not
// call into the code paths they verify.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "coexsim/joint.hpp"
#include "coexsim/lte_pf.hpp"

namespace oracles {

// Exhaustive per-RB argmax: build the full (UE, RB) metric table, then pick
// the best UE per RB, lowest id on ties.
inline coexsim::TtiAllocation brute_force_tti(const std::vector<coexsim::TtiCandidate>& candidates,
                                              const coexsim::PfState& state, int num_rbs,
                                              double tti_seconds) {
  coexsim::TtiAllocation alloc;
  alloc.rb_to_ue.assign(static_cast<size_t>(num_rbs), -1);
  if (candidates.empty()) return alloc;

  std::vector<std::vector<double>> metric(candidates.size());
  for (size_t c = 0; c < candidates.size(); ++c) {
    metric[c].resize(static_cast<size_t>(num_rbs));
    for (int rb = 0; rb < num_rbs; ++rb)
      metric[c][static_cast<size_t>(rb)] =
          candidates[c].rate_on_rb(rb) / state.average(candidates[c].ue_id);
  }
  for (int rb = 0; rb < num_rbs; ++rb) {
    size_t best = 0;
    for (size_t c = 1; c < candidates.size(); ++c) {
      const double m = metric[c][static_cast<size_t>(rb)];
      const double mb = metric[best][static_cast<size_t>(rb)];
      if (m > mb || (m == mb && candidates[c].ue_id < candidates[best].ue_id)) best = c;
    }
    alloc.rb_to_ue[static_cast<size_t>(rb)] = candidates[best].ue_id;
    alloc.achieved_bits[candidates[best].ue_id] +=
        candidates[best].rate_on_rb(rb) * tti_seconds;
  }
  return alloc;
}

// Quantized rate-allocation instance for checking the global optimizer: the
// projection model written out directly.
struct AllocInstance {
  std::vector<coexsim::UeLink> ues;  // wifi_phy_bps abused as the projected w_i
  coexsim::OptimizerParams params;   // mac_efficiency=1, contenders=1 -> w_i passes through
};

inline double alloc_objective(const AllocInstance& inst, const std::vector<int>& share_tenths,
                              const std::vector<int>& member) {
  double total = 0.0;
  for (size_t i = 0; i < inst.ues.size(); ++i) {
    const auto& ue = inst.ues[i];
    const double w = member[i] ? coexsim::wifi_projection(ue, inst.params) : 0.0;
    const double r = share_tenths[i] * 0.1 * ue.lte_rate_bps + w;
    total += std::min(r, coexsim::class_cap(ue.capability, inst.params));
  }
  return total;
}

struct AllocOptimum {
  double best = -1.0;  // -1 = no fully feasible grid point
  bool feasible = false;
};

// Enumerate every grid point (shares in tenths, membership binary) that
// meets the budget and gives each UE at least r_min; return the best sum.
inline AllocOptimum enumerate_alloc_optimum(const AllocInstance& inst) {
  const size_t n = inst.ues.size();
  std::vector<int> share(n, 0), member(n, 0);
  AllocOptimum out;

  std::vector<int> member_max(n);
  for (size_t i = 0; i < n; ++i)
    member_max[i] = coexsim::has_wifi(inst.ues[i].capability) ? 1 : 0;

  // Odometer over shares and memberships.
  while (true) {
    int total_tenths = 0;
    for (size_t i = 0; i < n; ++i) total_tenths += share[i];
    if (total_tenths <= 10) {
      bool ok = true;
      for (size_t i = 0; i < n; ++i) {
        const auto& ue = inst.ues[i];
        if (!coexsim::has_lte(ue.capability) && share[i] > 0) { ok = false; break; }
        const double w = member[i] ? coexsim::wifi_projection(ue, inst.params) : 0.0;
        const double r = std::min(share[i] * 0.1 * ue.lte_rate_bps + w,
                                  coexsim::class_cap(ue.capability, inst.params));
        if (r < inst.params.r_min_bps) { ok = false; break; }
      }
      if (ok) {
        out.feasible = true;
        out.best = std::max(out.best, alloc_objective(inst, share, member));
      }
    }
    // advance odometer
    size_t i = 0;
    for (; i < n; ++i) {
      if (share[i] < 10) { ++share[i]; break; }
      share[i] = 0;
    }
    if (i < n) continue;
    for (i = 0; i < n; ++i) {
      if (member[i] < member_max[i]) { ++member[i]; break; }
      member[i] = 0;
    }
    if (i == n) break;
  }
  return out;
}

// Two-pass population standard deviation.
inline double population_std(const std::map<int, double>& rates) {
  double mean = 0.0;
  for (const auto& [id, r] : rates) mean += r;
  mean /= static_cast<double>(rates.size());
  double sq = 0.0;
  for (const auto& [id, r] : rates) sq += (r - mean) * (r - mean);
  return std::sqrt(sq / static_cast<double>(rates.size()));
}

// Chi-square statistic against a uniform expectation.
inline double chi_square_uniform(const std::vector<long>& counts, long total_draws) {
  const double expected = static_cast<double>(total_draws) / counts.size();
  double stat = 0.0;
  for (long c : counts) {
    const double d = c - expected;
    stat += d * d / expected;
  }
  return stat;
}

}  // namespace oracles
