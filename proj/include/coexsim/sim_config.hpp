#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "coexsim/channel.hpp"
#include "coexsim/wifi_dcf.hpp"

namespace coexsim {

// Configuration error that names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Full experiment description. Defaults are the repo's calibrated
// configuration; `configs/default.conf` spells out the same values.
struct SimConfig {
  // Population: K LTE-only, M WiFi-only, N dual-interface users.
  int k_lte_only = 30;
  int m_wifi_only = 30;
  int n_dual = 40;

  // LTE downlink grid.
  int num_rbs = 50;
  double rb_bandwidth_hz = 180e3;
  double tti_s = 1e-3;

  // Window/deferral cadence.
  int window_ttis = 100;
  int total_windows = 100;
  double r_min_bps = 80e3;
  int count_max = 5;
  std::string deferral_counting = "consecutive";  // or "cumulative"

  // PF tracking.
  double tau_ttis = 100.0;
  double pf_epsilon_bps = 1.0;

  // Per-UE interface rate caps (R_LMAX / R_WMAX).
  double lte_cap_bps = 1.8e6;
  double wifi_cap_bps = 0.85e6;

  // Airtime-share projection constant used by the global optimizer.
  double mac_efficiency = 0.7;

  // Headroom factor on minimum-rate guarantees (strict constraint + fading).
  double floor_margin = 1.0;

  std::uint64_t seed = 1;
  std::string placement = "uniform-disk";

  ChannelParams channel;
  WifiParams wifi;

  double window_duration_s() const { return window_ttis * tti_s; }
  int total_ues() const { return k_lte_only + m_wifi_only + n_dual; }
  double lte_bandwidth_hz() const { return num_rbs * rb_bandwidth_hz; }

  // Throws ConfigError naming the first offending key.
  void validate() const {
    auto require = [](bool ok, const char* key, const char* msg) {
      if (!ok) throw ConfigError(key, msg);
    };
    require(k_lte_only >= 0, "k_lte_only", "must be >= 0");
    require(m_wifi_only >= 0, "m_wifi_only", "must be >= 0");
    require(n_dual >= 0, "n_dual", "must be >= 0");
    require(total_ues() >= 1, "k_lte_only", "population K+M+N must be >= 1");
    require(num_rbs >= 1, "num_rbs", "must be >= 1");
    require(rb_bandwidth_hz > 0, "rb_bandwidth_hz", "must be > 0");
    require(tti_s > 0, "tti_s", "must be > 0");
    require(window_ttis >= 1, "window_ttis", "must be >= 1");
    require(total_windows >= 1, "total_windows", "must be >= 1");
    require(r_min_bps > 0, "r_min_bps", "must be > 0");
    require(count_max >= 1, "count_max", "must be >= 1");
    require(deferral_counting == "consecutive" || deferral_counting == "cumulative",
            "deferral_counting", "must be 'consecutive' or 'cumulative'");
    require(tau_ttis >= 1, "tau_ttis", "must be >= 1");
    require(pf_epsilon_bps > 0, "pf_epsilon_bps", "must be > 0");
    require(lte_cap_bps > 0, "lte_cap_bps", "must be > 0");
    require(wifi_cap_bps > 0, "wifi_cap_bps", "must be > 0");
    require(mac_efficiency > 0 && mac_efficiency <= 1, "mac_efficiency", "must be in (0,1]");
    require(floor_margin >= 1.0, "floor_margin", "must be >= 1");
    require(placement == "uniform-disk", "placement", "only 'uniform-disk' is supported");
    try {
      channel.validate();
      wifi.validate();
    } catch (const std::invalid_argument& e) {
      const std::string what = e.what();
      const auto colon = what.find(' ');
      throw ConfigError(what.substr(0, what.find(' ')), what.substr(colon + 1));
    }
  }
};

}  // namespace coexsim
