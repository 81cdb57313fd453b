#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coexsim/capability.hpp"
#include "coexsim/channel.hpp"
#include "coexsim/joint.hpp"
#include "coexsim/lte_pf.hpp"
#include "coexsim/metrics.hpp"
#include "coexsim/rng.hpp"
#include "coexsim/sim_config.hpp"
#include "coexsim/wifi_dcf.hpp"

namespace coexsim {

enum class Mode { kLte, kWifi, kJoint };

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::kLte: return "lte";
    case Mode::kWifi: return "wifi";
    case Mode::kJoint: return "joint";
  }
  throw std::logic_error("bad mode");
}

inline Mode mode_from_string(const std::string& s) {
  if (s == "lte") return Mode::kLte;
  if (s == "wifi") return Mode::kWifi;
  if (s == "joint") return Mode::kJoint;
  throw std::invalid_argument("unknown mode: " + s);
}

// A UE participates in a mode when it has the interface(s) that mode runs.
inline bool participates(Capability c, Mode m) {
  switch (m) {
    case Mode::kLte: return has_lte(c);
    case Mode::kWifi: return has_wifi(c);
    case Mode::kJoint: return true;
  }
  throw std::logic_error("bad mode");
}

struct UeState {
  int id = 0;
  Capability capability = Capability::kDual;
  double position_m = 1.0;  // distance from the cell center
  double cumulative_bits = 0.0;
  std::vector<double> window_rates_bps;
};

// K LteOnly, M WifiOnly, N Dual UEs with area-uniform positions on the disk
// (d = R * sqrt(u), floored at 1 m to keep the path loss finite).
inline std::vector<UeState> build_population(const SimConfig& config, RandomStream& rng) {
  std::vector<UeState> ues;
  ues.reserve(static_cast<size_t>(config.total_ues()));
  int next_id = 0;
  auto add = [&](Capability cap, int count) {
    for (int i = 0; i < count; ++i) {
      UeState ue;
      ue.id = next_id++;
      ue.capability = cap;
      ue.position_m = std::max(1.0, config.channel.cell_radius_m * std::sqrt(rng.next_unit()));
      ues.push_back(std::move(ue));
    }
  };
  add(Capability::kLteOnly, config.k_lte_only);
  add(Capability::kWifiOnly, config.m_wifi_only);
  add(Capability::kDual, config.n_dual);
  return ues;
}

struct SimReport {
  Mode mode = Mode::kJoint;
  std::uint64_t seed = 0;
  struct UeInfo {
    int id;
    Capability capability;
    double position_m;
  };
  std::vector<UeInfo> ues;
  std::vector<std::vector<double>> series;  // [ue index][window] -> bits/s
  std::vector<double> cumulative_bits;      // [ue index]
  std::map<int, double> long_run_bps;       // participants only
  SchedulerStats stats;

  // Diagnostics for tests and calibration.
  int optimizer_invocations = 0;
  std::vector<std::pair<int, std::set<int>>> retrain_events;  // (window, set)
  std::vector<double> alloc_share_totals;
  int max_wifi_stage = 0;
  long wifi_successes = 0;
  long wifi_collisions = 0;
  double total_lte_bits = 0.0;
  double total_wifi_bits = 0.0;

  double total_time_s = 0.0;
};

namespace detail {

// One simulation run; owns all per-run state. Single-threaded and
// deterministic; independent runs share nothing.
class Simulation {
 public:
  Simulation(const SimConfig& config, Mode mode)
      : cfg_(config),
        mode_(mode),
        placement_rng_(config.seed, kStreamPlacement),
        channel_rng_(config.seed, kStreamChannel),
        mac_rng_(config.seed, kStreamMac) {
    cfg_.validate();
    ues_ = build_population(cfg_, placement_rng_);
    const size_t n = ues_.size();
    fade_lte_.assign(n, 1.0);
    fade_wifi_.assign(n, 1.0);
    lte_rate_.assign(n, 0.0);
    wifi_phy_.assign(n, 0.0);
    wifi_window_bits_.assign(n, 0.0);
    lte_window_bits_.assign(n, 0.0);
    target_share_.assign(n, 0.0);

    for (const auto& ue : ues_) {
      if (has_lte(ue.capability)) lte_ids_.push_back(ue.id);
      if (has_wifi(ue.capability)) wifi_ids_.push_back(ue.id);
    }

    // Position-determined rates at unit fading: the channel knowledge the
    // controllers share when they optimize (fast fading is not exchanged).
    lte_rate_nominal_.assign(n, 0.0);
    wifi_phy_nominal_.assign(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
      const double d = ues_[i].position_m;
      lte_rate_nominal_[i] =
          snr_to_rate(snr_db(cfg_.channel, d, Interface::kLte, 1.0), cfg_.lte_bandwidth_hz(),
                      cfg_.channel.efficiency, cfg_.channel.lte_link_max_bps);
      wifi_phy_nominal_[i] =
          snr_to_rate(snr_db(cfg_.channel, d, Interface::kWifi, 1.0), cfg_.wifi.bandwidth_hz,
                      cfg_.channel.efficiency, cfg_.channel.wifi_link_max_bps);
    }


    pf_.tau_ttis = cfg_.tau_ttis;
    pf_.epsilon_bps = cfg_.pf_epsilon_bps;
    if (runs_lte())
      for (int id : lte_ids_) pf_.track(id);

    deferral_.count_max = cfg_.count_max;
    deferral_.r_min_bps = cfg_.r_min_bps;
    deferral_.cumulative = cfg_.deferral_counting == "cumulative";
    if (mode_ == Mode::kJoint)
      for (const auto& ue : ues_) deferral_.track(ue.id);

    if (runs_wifi()) {
      stations_.reserve(wifi_ids_.size());
      for (int id : wifi_ids_) {
        WifiStationState st;
        st.ue_id = id;
        st.backoff_slots = draw_backoff(mac_rng_, contention_window(0, cfg_.wifi));
        stations_.push_back(st);
      }
    }
  }

  SimReport run() {
    SimReport report;
    report.mode = mode_;
    report.seed = cfg_.seed;
    for (const auto& ue : ues_)
      report.ues.push_back({ue.id, ue.capability, ue.position_m});

    for (int w = 0; w < cfg_.total_windows; ++w) run_window(w, report);

    report.series.resize(ues_.size());
    report.cumulative_bits.resize(ues_.size());
    const double total_time = cfg_.total_windows * cfg_.window_duration_s();
    report.total_time_s = total_time;
    for (size_t i = 0; i < ues_.size(); ++i) {
      report.series[i] = ues_[i].window_rates_bps;
      report.cumulative_bits[i] = ues_[i].cumulative_bits;
      if (participates(ues_[i].capability, mode_))
        report.long_run_bps[ues_[i].id] = ues_[i].cumulative_bits / total_time;
    }
    report.stats = report.long_run_bps.empty()
                       ? SchedulerStats{}
                       : compute_stats(report.long_run_bps, cfg_.r_min_bps);
    return report;
  }

 private:
  bool runs_lte() const { return mode_ != Mode::kWifi; }
  bool runs_wifi() const { return mode_ != Mode::kLte; }

  const UeState& ue_by_id(int id) const { return ues_[static_cast<size_t>(id)]; }

  void redraw_channel(int window_index) {
    const auto& ch = cfg_.channel;
    const bool redraw = ch.fading_enabled &&
                        window_index % ch.fading_block_len_windows == 0;
    for (size_t i = 0; i < ues_.size(); ++i) {
      if (redraw) {
        fade_lte_[i] = channel_rng_.next_exp_unit();
        fade_wifi_[i] = channel_rng_.next_exp_unit();
      }
      const double d = ues_[i].position_m;
      lte_rate_[i] = snr_to_rate(snr_db(ch, d, Interface::kLte, fade_lte_[i]),
                                 cfg_.lte_bandwidth_hz(), ch.efficiency, ch.lte_link_max_bps);
      wifi_phy_[i] = snr_to_rate(snr_db(ch, d, Interface::kWifi, fade_wifi_[i]),
                                 cfg_.wifi.bandwidth_hz, ch.efficiency, ch.wifi_link_max_bps);
    }
  }

  bool wifi_member(int ue_id) const {
    if (!allocation_) return true;
    auto it = allocation_->entries.find(ue_id);
    return it == allocation_->entries.end() ? true : it->second.wifi_member;
  }

  void run_wifi_subwindow(SimReport& report) {
    const double window_s = cfg_.window_duration_s();
    // Stations contend this window when steered onto WiFi and their channel
    // supports at least the association floor.
    std::vector<WifiStationState> active;
    std::vector<size_t> active_index;
    for (size_t s = 0; s < stations_.size(); ++s) {
      const int id = stations_[s].ue_id;
      const double phy = wifi_phy_[static_cast<size_t>(id)];
      if (phy < cfg_.wifi.min_phy_rate_bps) continue;
      if (mode_ == Mode::kJoint && !wifi_member(id)) continue;
      WifiStationState st = stations_[s];
      st.phy_rate_bps = phy;
      st.budget_bits = std::min(phy, cfg_.wifi_cap_bps) * window_s;
      st.delivered_bits = 0.0;
      active.push_back(st);
      active_index.push_back(s);
    }
    const WifiWindowResult result = run_wifi_window(active, cfg_.wifi, window_s, mac_rng_);
    report.wifi_successes += result.successes;
    report.wifi_collisions += result.collisions;
    for (size_t k = 0; k < active.size(); ++k) {
      stations_[active_index[k]].stage = active[k].stage;
      stations_[active_index[k]].backoff_slots = active[k].backoff_slots;
      wifi_window_bits_[static_cast<size_t>(active[k].ue_id)] = active[k].delivered_bits;
      report.max_wifi_stage = std::max(report.max_wifi_stage, active[k].stage);
    }
  }

  // PF argmax with the allocate_tti tie rule (lowest UE id wins ties).
  template <typename Pred>
  int pick_argmax(Pred&& admitted) const {
    double best_metric = -1.0;
    int best = -1;
    for (int id : lte_ids_) {
      if (!admitted(id)) continue;
      const double m = pf_metric(lte_rate_[static_cast<size_t>(id)], pf_.average(id));
      if (m > best_metric || (m == best_metric && id < best)) {
        best_metric = m;
        best = id;
      }
    }
    return best;
  }

  void run_lte_subwindow(int /*window_index*/) {
    const double window_s = cfg_.window_duration_s();
    const double quota_bits = cfg_.lte_cap_bps * window_s;
    const double tti = cfg_.tti_s;
    const int num_rbs = cfg_.num_rbs;
    const double rbs_per_window = static_cast<double>(num_rbs) * cfg_.window_ttis;

    // Under an allocation, admission is the granted RB share and nothing
    // more: the shares stay fixed until the next retraining, which is where
    // the joint system pays for its stability. Without one (LTE-only mode,
    // or joint before the first trigger) every UE is admitted and PF runs
    // free.
    std::vector<int> share_budget_rbs(ues_.size(), 0);
    if (allocation_) {
      for (int id : lte_ids_) {
        const size_t i = static_cast<size_t>(id);
        share_budget_rbs[i] =
            static_cast<int>(std::ceil(target_share_[i] * rbs_per_window - 1e-9));
      }
    }

    std::vector<double> tti_bits(ues_.size(), 0.0);
    std::vector<char> excluded(ues_.size(), 0);

    for (int t = 0; t < cfg_.window_ttis; ++t) {
      std::fill(tti_bits.begin(), tti_bits.end(), 0.0);
      std::fill(excluded.begin(), excluded.end(), 0);
      int remaining = num_rbs;

      auto bits_per_rb = [&](int id) {
        return lte_rate_[static_cast<size_t>(id)] / num_rbs * tti;
      };
      auto quota_rbs = [&](int id) {
        const double room = quota_bits - lte_window_bits_[static_cast<size_t>(id)] -
                            tti_bits[static_cast<size_t>(id)];
        const double per_rb = bits_per_rb(id);
        if (per_rb <= 0 || room <= 0) return 0;
        return static_cast<int>(std::floor(room / per_rb + 1e-9));
      };
      auto admitted = [&](int id) {
        if (excluded[static_cast<size_t>(id)] || lte_rate_[static_cast<size_t>(id)] <= 0 ||
            quota_rbs(id) <= 0)
          return false;
        return !allocation_ || share_budget_rbs[static_cast<size_t>(id)] > 0;
      };

      while (remaining > 0) {
        const int winner = pick_argmax(admitted);
        if (winner < 0) break;
        const size_t wi = static_cast<size_t>(winner);
        int take = std::min(remaining, quota_rbs(winner));
        if (allocation_) take = std::min(take, share_budget_rbs[wi]);
        if (take <= 0) {
          excluded[wi] = 1;
          continue;
        }
        tti_bits[wi] += take * bits_per_rb(winner);
        if (allocation_) share_budget_rbs[wi] -= take;
        remaining -= take;
      }

      std::map<int, double> achieved;
      for (int id : lte_ids_) {
        const size_t i = static_cast<size_t>(id);
        lte_window_bits_[i] += tti_bits[i];
        double rate = tti_bits[i] / tti;
        if (mode_ == Mode::kJoint) rate += wifi_window_bits_[i] / window_s;
        achieved[id] = rate;
      }
      update_average(pf_, achieved);
    }
  }

  void run_joint_control(int window_index, const std::map<int, double>& achieved,
                         SimReport& report) {
    const bool trigger = record_window(deferral_, achieved);
    if (!trigger) return;
    const std::set<int> retrain = select_retrain_set(deferral_, achieved, trigger);
    reset_retrained(deferral_, retrain);
    report.retrain_events.emplace_back(window_index, retrain);

    int contenders = 0;
    for (int id : wifi_ids_)
      if (wifi_phy_nominal_[static_cast<size_t>(id)] >= cfg_.wifi.min_phy_rate_bps) ++contenders;

    std::vector<UeLink> links;
    links.reserve(ues_.size());
    for (const auto& ue : ues_) {
      UeLink link;
      link.ue_id = ue.id;
      link.capability = ue.capability;
      link.lte_rate_bps =
          has_lte(ue.capability) ? lte_rate_nominal_[static_cast<size_t>(ue.id)] : 0.0;
      const double phy = wifi_phy_nominal_[static_cast<size_t>(ue.id)];
      link.wifi_phy_bps =
          has_wifi(ue.capability) && phy >= cfg_.wifi.min_phy_rate_bps ? phy : 0.0;
      links.push_back(link);
    }
    OptimizerParams opt;
    opt.r_min_bps = cfg_.r_min_bps;
    opt.lte_cap_bps = cfg_.lte_cap_bps;
    opt.wifi_cap_bps = cfg_.wifi_cap_bps;
    opt.wifi_contenders = std::max(contenders, 1);
    opt.mac_efficiency = cfg_.mac_efficiency;
    opt.floor_margin = cfg_.floor_margin;
    allocation_ = global_optimize(links, retrain, opt);
    ++report.optimizer_invocations;
    report.alloc_share_totals.push_back(allocation_->lte_share_total());

    for (const auto& ue : ues_)
      target_share_[static_cast<size_t>(ue.id)] = allocation_->entries.at(ue.id).lte_share;
  }

  void run_window(int window_index, SimReport& report) {
    const double window_s = cfg_.window_duration_s();
    redraw_channel(window_index);
    std::fill(wifi_window_bits_.begin(), wifi_window_bits_.end(), 0.0);
    std::fill(lte_window_bits_.begin(), lte_window_bits_.end(), 0.0);

    if (runs_wifi()) run_wifi_subwindow(report);
    if (runs_lte()) run_lte_subwindow(window_index);

    std::map<int, double> achieved;
    for (auto& ue : ues_) {
      const size_t i = static_cast<size_t>(ue.id);
      double bits = 0.0;
      if (runs_lte() && has_lte(ue.capability)) {
        bits += lte_window_bits_[i];
        report.total_lte_bits += lte_window_bits_[i];
      }
      if (runs_wifi() && has_wifi(ue.capability)) {
        bits += wifi_window_bits_[i];
        report.total_wifi_bits += wifi_window_bits_[i];
      }
      ue.cumulative_bits += bits;
      ue.window_rates_bps.push_back(bits / window_s);
      achieved[ue.id] = bits / window_s;
    }

    if (mode_ == Mode::kJoint) run_joint_control(window_index, achieved, report);
  }

  SimConfig cfg_;
  Mode mode_;
  RandomStream placement_rng_;
  RandomStream channel_rng_;
  RandomStream mac_rng_;

  std::vector<UeState> ues_;
  std::vector<int> lte_ids_;
  std::vector<int> wifi_ids_;

  PfState pf_;
  DeferralState deferral_;
  std::vector<WifiStationState> stations_;
  std::optional<RateAllocation> allocation_;

  std::vector<double> fade_lte_, fade_wifi_;
  std::vector<double> lte_rate_, wifi_phy_;
  std::vector<double> lte_rate_nominal_, wifi_phy_nominal_;
  std::vector<double> wifi_window_bits_, lte_window_bits_;
  std::vector<double> target_share_;
};

}  // namespace detail

// Run one mode of the experiment. Deterministic in (config, mode, seed).
inline SimReport run(const SimConfig& config, Mode mode) {
  detail::Simulation sim(config, mode);
  return sim.run();
}

}  // namespace coexsim
