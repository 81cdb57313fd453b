#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "coexsim/rng.hpp"

namespace coexsim {

struct WifiParams {
  double slot_time_s = 9e-6;
  int cw_min = 16;    // power of two, >= 1
  int cw_max = 1024;  // power of two, >= cw_min
  int max_stage = 6;  // collision stage cap
  double payload_bits = 16000.0;
  double success_overhead_s = 130e-6;   // DIFS + SIFS + ACK (+ RTS/CTS)
  double collision_overhead_s = 60e-6;  // RTS collision cost
  double phy_rate_bps = 24e6;           // nominal rate, used when a station has none
  bool rts_enabled = true;
  double min_phy_rate_bps = 1e6;  // association floor: slower stations cannot contend
  double bandwidth_hz = 20e6;     // carrier bandwidth, feeds the channel rate map

  void validate() const {
    auto pow2 = [](int v) { return v >= 1 && (v & (v - 1)) == 0; };
    if (!pow2(cw_min)) throw std::invalid_argument("wifi.cw_min must be a power of two >= 1");
    if (!pow2(cw_max) || cw_max < cw_min)
      throw std::invalid_argument("wifi.cw_max must be a power of two >= cw_min");
    if (max_stage < 0) throw std::invalid_argument("wifi.max_stage must be >= 0");
    if (slot_time_s <= 0) throw std::invalid_argument("wifi.slot_time_s must be > 0");
    if (payload_bits <= 0) throw std::invalid_argument("wifi.payload_bits must be > 0");
    if (success_overhead_s < 0) throw std::invalid_argument("wifi.success_overhead_s must be >= 0");
    if (collision_overhead_s < 0) throw std::invalid_argument("wifi.collision_overhead_s must be >= 0");
    if (rts_enabled && collision_overhead_s > success_overhead_s)
      throw std::invalid_argument("wifi.collision_overhead_s must be <= success_overhead_s with RTS");
    if (phy_rate_bps <= 0) throw std::invalid_argument("wifi.phy_rate_bps must be > 0");
    if (min_phy_rate_bps < 0) throw std::invalid_argument("wifi.min_phy_rate_bps must be >= 0");
    if (bandwidth_hz <= 0) throw std::invalid_argument("wifi.bandwidth_hz must be > 0");
  }
};

// Per-station DCF state. `stage` is the successive-collision count k; the
// contention window doubles with it. `budget_bits` caps what the station may
// deliver in the current window (channel capacity and/or R_WMAX); a station
// whose next payload would not fit stands down until the budget resets.
struct WifiStationState {
  int ue_id = 0;
  int stage = 0;
  int backoff_slots = 0;
  double delivered_bits = 0.0;  // this window
  double phy_rate_bps = 0.0;    // 0 = use WifiParams.phy_rate_bps
  double budget_bits = std::numeric_limits<double>::infinity();

  double effective_phy(const WifiParams& p) const {
    return phy_rate_bps > 0 ? phy_rate_bps : p.phy_rate_bps;
  }

  bool can_contend(const WifiParams& p) const {
    return delivered_bits + p.payload_bits <= budget_bits;
  }
};

// Upper bound (inclusive) of the uniform backoff draw at a collision stage:
// min(2^stage * cw_min, cw_max) - 1. With cw_min = 1 this is the literal
// 2^k - 1 window.
inline int contention_window(int stage, const WifiParams& params) {
  if (stage < 0) throw std::domain_error("contention_window: stage must be >= 0");
  const int s = std::min(stage, 30);
  const std::int64_t cw =
      std::min<std::int64_t>(static_cast<std::int64_t>(params.cw_min) << s, params.cw_max);
  return static_cast<int>(cw - 1);
}

// Uniform integer in [0, upper].
inline int draw_backoff(RandomStream& rng, int upper) {
  if (upper < 0) throw std::domain_error("draw_backoff: upper must be >= 0");
  return static_cast<int>(rng.next_below(static_cast<std::uint64_t>(upper) + 1));
}

struct SlotOutcome {
  enum class Kind { kIdle, kSuccess, kCollision };
  Kind kind = Kind::kIdle;
  std::vector<int> ue_ids;  // winner, or all colliding stations
  double elapsed_s = 0.0;
  double delivered_bits = 0.0;
};

// Advance the contending stations by one slot. Stations that cannot contend
// (budget exhausted) are frozen: they neither transmit nor count down.
inline SlotOutcome step_slot(std::vector<WifiStationState>& stations,
                             const WifiParams& params, RandomStream& rng) {
  SlotOutcome out;
  std::vector<WifiStationState*> expired;
  for (auto& st : stations)
    if (st.can_contend(params) && st.backoff_slots == 0) expired.push_back(&st);

  if (expired.empty()) {
    out.kind = SlotOutcome::Kind::kIdle;
    out.elapsed_s = params.slot_time_s;
    for (auto& st : stations)
      if (st.can_contend(params) && st.backoff_slots > 0) --st.backoff_slots;
    return out;
  }

  if (expired.size() == 1) {
    WifiStationState& w = *expired.front();
    out.kind = SlotOutcome::Kind::kSuccess;
    out.ue_ids.push_back(w.ue_id);
    out.delivered_bits = params.payload_bits;
    out.elapsed_s = params.slot_time_s + params.success_overhead_s +
                    params.payload_bits / w.effective_phy(params);
    w.delivered_bits += params.payload_bits;
    w.stage = 0;
    w.backoff_slots = draw_backoff(rng, contention_window(0, params));
    return out;
  }

  out.kind = SlotOutcome::Kind::kCollision;
  out.elapsed_s = params.slot_time_s + params.collision_overhead_s;
  for (WifiStationState* st : expired) {
    out.ue_ids.push_back(st->ue_id);
    st->stage = std::min(st->stage + 1, params.max_stage);
    st->backoff_slots = draw_backoff(rng, contention_window(st->stage, params));
  }
  return out;
}

struct WifiWindowResult {
  std::map<int, double> rate_bps;  // UE id -> delivered_bits / window
  long successes = 0;
  long collisions = 0;
  long idle_slots = 0;
  double elapsed_s = 0.0;
};

// Run the slot loop until the window is exhausted (or nobody can contend any
// more). Per-window delivery counters are reset on entry; stage and backoff
// persist across windows.
inline WifiWindowResult run_wifi_window(std::vector<WifiStationState>& stations,
                                        const WifiParams& params,
                                        double window_duration_s,
                                        RandomStream& rng) {
  if (window_duration_s <= 0)
    throw std::invalid_argument("run_wifi_window: window duration must be > 0");
  for (auto& st : stations) st.delivered_bits = 0.0;

  WifiWindowResult result;
  while (result.elapsed_s < window_duration_s) {
    bool anyone = false;
    for (const auto& st : stations)
      if (st.can_contend(params)) { anyone = true; break; }
    if (!anyone) {
      result.elapsed_s = window_duration_s;
      break;
    }
    const SlotOutcome slot = step_slot(stations, params, rng);
    result.elapsed_s += slot.elapsed_s;
    switch (slot.kind) {
      case SlotOutcome::Kind::kIdle: ++result.idle_slots; break;
      case SlotOutcome::Kind::kSuccess: ++result.successes; break;
      case SlotOutcome::Kind::kCollision: ++result.collisions; break;
    }
  }
  for (const auto& st : stations)
    result.rate_bps[st.ue_id] = st.delivered_bits / window_duration_s;
  return result;
}

}  // namespace coexsim
