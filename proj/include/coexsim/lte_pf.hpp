#pragma once

#include <map>
#include <stdexcept>
#include <vector>

namespace coexsim {

// Proportional-fair scheduler state: one EWMA average throughput per tracked
// UE. The average is the PF denominator and is floored at `epsilon_bps` so
// the metric is always defined; a fresh UE starts at the floor and therefore
// has maximal priority.
struct PfState {
  std::map<int, double> avg_bps;   // UE id -> average throughput (bits/s)
  double tau_ttis = 100.0;         // EWMA time constant, >= 1
  double epsilon_bps = 1.0;        // initialization/decay floor, > 0

  void validate() const {
    if (tau_ttis < 1) throw std::invalid_argument("pf: tau must be >= 1");
    if (epsilon_bps <= 0) throw std::invalid_argument("pf: epsilon must be > 0");
    for (const auto& [ue, avg] : avg_bps)
      if (avg < epsilon_bps) throw std::invalid_argument("pf: average below epsilon floor");
  }

  void track(int ue_id) { avg_bps.emplace(ue_id, epsilon_bps); }

  bool tracks(int ue_id) const { return avg_bps.count(ue_id) != 0; }

  double average(int ue_id) const { return avg_bps.at(ue_id); }
};

// PF metric: instantaneous rate over average throughput.
inline double pf_metric(double inst_rate_bps, double avg_throughput_bps) {
  if (avg_throughput_bps <= 0)
    throw std::domain_error("pf_metric: average throughput must be > 0");
  return inst_rate_bps / avg_throughput_bps;
}

// One UE competing in a TTI. `rb_rates_bps` holds the achievable rate on each
// RB; a single entry means the rate is flat across the band.
struct TtiCandidate {
  int ue_id = 0;
  std::vector<double> rb_rates_bps;

  double rate_on_rb(int rb) const {
    return rb_rates_bps.size() == 1 ? rb_rates_bps[0]
                                    : rb_rates_bps.at(static_cast<size_t>(rb));
  }
};

struct TtiAllocation {
  std::vector<int> rb_to_ue;            // RB index -> UE id, -1 = idle
  std::map<int, double> achieved_bits;  // UE id -> bits delivered this TTI

  int rbs_won(int ue_id) const {
    int n = 0;
    for (int u : rb_to_ue) n += (u == ue_id);
    return n;
  }
};

// Per-RB argmax of the PF metric; ties go to the lowest UE id. The achieved
// bits of a UE are the sum over its won RBs of rate * tti.
inline TtiAllocation allocate_tti(const std::vector<TtiCandidate>& candidates,
                                  const PfState& state, int num_rbs,
                                  double tti_seconds) {
  if (num_rbs < 1) throw std::invalid_argument("allocate_tti: num_rbs must be >= 1");
  for (const auto& c : candidates)
    if (!state.tracks(c.ue_id))
      throw std::invalid_argument("allocate_tti: candidate UE not tracked by PF state");

  TtiAllocation alloc;
  alloc.rb_to_ue.assign(static_cast<size_t>(num_rbs), -1);
  if (candidates.empty()) return alloc;

  for (int rb = 0; rb < num_rbs; ++rb) {
    double best_metric = -1.0;
    int best_ue = -1;
    double best_rate = 0.0;
    for (const auto& c : candidates) {
      const double rate = c.rate_on_rb(rb);
      const double m = pf_metric(rate, state.average(c.ue_id));
      if (m > best_metric || (m == best_metric && c.ue_id < best_ue)) {
        best_metric = m;
        best_ue = c.ue_id;
        best_rate = rate;
      }
    }
    alloc.rb_to_ue[static_cast<size_t>(rb)] = best_ue;
    alloc.achieved_bits[best_ue] += best_rate * tti_seconds;
  }
  return alloc;
}

// EWMA update over all tracked UEs: avg' = (1 - 1/tau) avg + (1/tau) rate,
// with rate = 0 for UEs absent from `achieved_bps` (unscheduled averages
// decay), floored at epsilon. UEs in the map must be tracked.
inline void update_average(PfState& state,
                           const std::map<int, double>& achieved_bps) {
  for (const auto& [ue, rate] : achieved_bps)
    if (!state.tracks(ue))
      throw std::invalid_argument("update_average: achieved entry for untracked UE");
  const double alpha = 1.0 / state.tau_ttis;
  for (auto& [ue, avg] : state.avg_bps) {
    auto it = achieved_bps.find(ue);
    const double rate = it == achieved_bps.end() ? 0.0 : it->second;
    avg = (1.0 - alpha) * avg + alpha * rate;
    if (avg < state.epsilon_bps) avg = state.epsilon_bps;
  }
}

}  // namespace coexsim
