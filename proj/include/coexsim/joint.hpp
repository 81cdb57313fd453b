#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "coexsim/capability.hpp"

namespace coexsim {

// Deferral bookkeeping: per-UE count of windows spent below R_min. Reaching
// count_max sends the UE (and everyone currently sharing its problem) to the
// global optimizer. Counting is consecutive by default; the cumulative
// variant only resets on retraining.
struct DeferralState {
  std::map<int, int> violation_count;  // UE id -> violations
  int count_max = 5;
  double r_min_bps = 80e3;
  bool cumulative = false;

  void validate() const {
    if (count_max < 1) throw std::invalid_argument("deferral: count_max must be >= 1");
    if (r_min_bps <= 0) throw std::invalid_argument("deferral: r_min must be > 0");
  }

  void track(int ue_id) { violation_count.emplace(ue_id, 0); }
};

// Record one window of achieved rates. A rate strictly below r_min counts as
// a violation; a good window clears the counter (consecutive mode). Returns
// true when any UE has just reached count_max.
inline bool record_window(DeferralState& state,
                          const std::map<int, double>& achieved_bps) {
  for (const auto& [ue, rate] : achieved_bps)
    if (state.violation_count.count(ue) == 0)
      throw std::invalid_argument("record_window: achieved entry for untracked UE");
  bool trigger = false;
  for (const auto& [ue, rate] : achieved_bps) {
    int& count = state.violation_count[ue];
    if (rate < state.r_min_bps) {
      ++count;
      if (count >= state.count_max) trigger = true;
    } else if (!state.cumulative) {
      count = 0;
    }
  }
  return trigger;
}

// The retrain set: every UE at count_max plus the "similar UEs" below r_min
// in the current window. Empty when no trigger fired.
inline std::set<int> select_retrain_set(const DeferralState& state,
                                        const std::map<int, double>& achieved_bps,
                                        bool trigger_fired) {
  std::set<int> retrain;
  if (!trigger_fired) return retrain;
  for (const auto& [ue, count] : state.violation_count)
    if (count >= state.count_max) retrain.insert(ue);
  for (const auto& [ue, rate] : achieved_bps)
    if (rate < state.r_min_bps) retrain.insert(ue);
  return retrain;
}

// Consume a trigger: retrained UEs restart their count.
inline void reset_retrained(DeferralState& state, const std::set<int>& retrain_set) {
  for (int ue : retrain_set) {
    auto it = state.violation_count.find(ue);
    if (it != state.violation_count.end()) it->second = 0;
  }
}

// ---------------------------------------------------------------------------
// Global optimizer
// ---------------------------------------------------------------------------

// One UE as the optimizer sees it: instantaneous full-band LTE rate and WiFi
// station capacity (0 when not associated or not WiFi-capable).
struct UeLink {
  int ue_id = 0;
  Capability capability = Capability::kDual;
  double lte_rate_bps = 0.0;   // rate if given the whole LTE band
  double wifi_phy_bps = 0.0;   // station channel capacity
};

struct OptimizerParams {
  double r_min_bps = 80e3;
  double lte_cap_bps = 1.8e6;    // R_LMAX, per UE
  double wifi_cap_bps = 0.85e6;  // R_WMAX, per UE
  int wifi_contenders = 1;       // n in the airtime-share projection
  double mac_efficiency = 0.7;   // calibration constant of the airtime model
  double lte_budget = 1.0;       // total RB share to hand out
  // The minimum-rate constraint is strict, and the planner's channel
  // knowledge excludes fast fading; guarantees are provisioned with this
  // headroom factor so the realized rate clears r_min.
  double floor_margin = 1.0;
};

struct RateAllocation {
  struct Entry {
    double lte_share = 0.0;        // fraction of total RB capacity
    bool wifi_member = false;      // contends on WiFi
    double projected_rate_bps = 0.0;
    bool r_min_met = false;        // false = flagged infeasible
  };
  std::map<int, Entry> entries;

  double lte_share_total() const {
    double s = 0.0;
    for (const auto& [ue, e] : entries) s += e.lte_share;
    return s;
  }
};

inline double class_cap(Capability c, const OptimizerParams& p) {
  switch (c) {
    case Capability::kLteOnly: return p.lte_cap_bps;
    case Capability::kWifiOnly: return p.wifi_cap_bps;
    case Capability::kDual: return p.lte_cap_bps + p.wifi_cap_bps;
  }
  throw std::logic_error("bad capability");
}

// Projected WiFi rate for a member among n contenders.
inline double wifi_projection(const UeLink& ue, const OptimizerParams& p) {
  if (!has_wifi(ue.capability) || ue.wifi_phy_bps <= 0) return 0.0;
  const int n = std::max(p.wifi_contenders, 1);
  return std::min({p.mac_efficiency * ue.wifi_phy_bps / n, p.wifi_cap_bps, ue.wifi_phy_bps});
}

// Two-phase greedy for "maximize sum R_i subject to R_min and per-class
// caps". Phase 1 buys r_min for each UE at its cheapest interface (WiFi
// membership is free; LTE costs share), retrain-set UEs first, then the rest
// by ascending cost; whoever does not fit in the budget is flagged. Phase 2
// spends the remaining share on the highest marginal LTE rates up to the
// per-class caps.
inline RateAllocation global_optimize(const std::vector<UeLink>& ues,
                                      const std::set<int>& retrain_set,
                                      const OptimizerParams& params) {
  for (int ue : retrain_set) {
    bool found = false;
    for (const auto& u : ues) found |= (u.ue_id == ue);
    if (!found) throw std::invalid_argument("global_optimize: retrain UE not in population");
  }

  RateAllocation alloc;
  if (ues.empty()) return alloc;

  struct Work {
    const UeLink* ue;
    double wifi_rate;   // phase-1 WiFi contribution
    double cost;        // LTE share needed to reach r_min
    bool needs_wifi;    // r_min coverage relies on the WiFi projection
  };
  std::vector<Work> work;
  work.reserve(ues.size());
  const double kInf = std::numeric_limits<double>::infinity();
  const double floor_target = params.r_min_bps * std::max(params.floor_margin, 1.0);
  for (const auto& u : ues) {
    Work w{&u, wifi_projection(u, params), 0.0, false};
    const double deficit = std::max(0.0, floor_target - w.wifi_rate);
    w.needs_wifi = w.wifi_rate > 0 && deficit < floor_target;
    if (deficit == 0.0) {
      w.cost = 0.0;
    } else if (has_lte(u.capability) && u.lte_rate_bps > 0) {
      w.cost = deficit / u.lte_rate_bps;
    } else {
      w.cost = kInf;  // WiFi-only UE the channel cannot carry to r_min
    }
    alloc.entries[u.ue_id] = {};
    work.push_back(w);
  }

  // Phase 1: retrain set first, then ascending cost; deterministic tie-break.
  std::vector<Work*> order;
  for (auto& w : work) order.push_back(&w);
  std::stable_sort(order.begin(), order.end(), [&](const Work* a, const Work* b) {
    const bool ra = retrain_set.count(a->ue->ue_id) != 0;
    const bool rb = retrain_set.count(b->ue->ue_id) != 0;
    if (ra != rb) return ra;
    if (a->cost != b->cost) return a->cost < b->cost;
    return a->ue->ue_id < b->ue->ue_id;
  });

  double budget = params.lte_budget;
  for (Work* w : order) {
    auto& entry = alloc.entries[w->ue->ue_id];
    if (std::isfinite(w->cost) && w->cost <= budget + 1e-12) {
      entry.lte_share = w->cost;
      entry.r_min_met = true;
      budget -= w->cost;
    }
  }
  budget = std::max(budget, 0.0);

  // Phase 2: surplus by descending marginal LTE rate up to the class caps.
  std::vector<const Work*> surplus;
  for (const auto& w : work)
    if (has_lte(w.ue->capability) && w.ue->lte_rate_bps > 0) surplus.push_back(&w);
  std::stable_sort(surplus.begin(), surplus.end(), [](const Work* a, const Work* b) {
    if (a->ue->lte_rate_bps != b->ue->lte_rate_bps)
      return a->ue->lte_rate_bps > b->ue->lte_rate_bps;
    return a->ue->ue_id < b->ue->ue_id;
  });
  for (const Work* w : surplus) {
    if (budget <= 1e-12) break;
    auto& entry = alloc.entries[w->ue->ue_id];
    const double rate = w->ue->lte_rate_bps;
    const double total_now = entry.lte_share * rate + w->wifi_rate;
    const double headroom = class_cap(w->ue->capability, params) - total_now;
    if (headroom <= 0) continue;
    const double grant = std::min(budget, headroom / rate);
    entry.lte_share += grant;
    budget -= grant;
  }

  // Membership and projections. WiFi adds w_i whenever the UE has cap
  // headroom left, so membership is dropped only for UEs already saturated
  // through LTE alone (their airtime is released to the others).
  for (auto& w : work) {
    auto& entry = alloc.entries[w.ue->ue_id];
    const double lte_rate = entry.lte_share * w.ue->lte_rate_bps;
    const double cap = class_cap(w.ue->capability, params);
    if (has_wifi(w.ue->capability)) {
      entry.wifi_member = w.wifi_rate > 0 && (w.needs_wifi || lte_rate < cap - 1e-9);
      if (w.ue->capability == Capability::kWifiOnly) entry.wifi_member = true;
    }
    const double wifi_rate = entry.wifi_member ? w.wifi_rate : 0.0;
    entry.projected_rate_bps = std::min(lte_rate + wifi_rate, cap);
    if (entry.projected_rate_bps >= params.r_min_bps) entry.r_min_met = true;
  }
  return alloc;
}

}  // namespace coexsim
