#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "coexsim/sim_config.hpp"

namespace coexsim {

// Plain-text config: one `key = value` per line, `#` starts a comment,
// dotted keys address the channel.* and wifi.* groups. An empty file is the
// default config. Unknown keys are rejected by name.

namespace detail {

inline std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + value + "'");
  }
}

inline int parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    if (v < INT32_MIN || v > INT32_MAX) throw std::out_of_range("int range");
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  }
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a non-negative integer, got '" + value + "'");
  }
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(key, "expected true/false, got '" + value + "'");
}

inline std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct KeyBinding {
  std::function<void(SimConfig&, const std::string& key, const std::string& value)> set;
  std::function<std::string(const SimConfig&)> get;
};

inline const std::vector<std::pair<std::string, KeyBinding>>& key_table() {
  auto dbl = [](auto member) {
    return KeyBinding{
        [member](SimConfig& c, const std::string& k, const std::string& v) {
          c.*member = parse_double(k, v);
        },
        [member](const SimConfig& c) { return fmt_g17(c.*member); }};
  };
  auto num = [](auto member) {
    return KeyBinding{
        [member](SimConfig& c, const std::string& k, const std::string& v) {
          c.*member = parse_int(k, v);
        },
        [member](const SimConfig& c) { return std::to_string(c.*member); }};
  };
  auto str = [](auto member) {
    return KeyBinding{
        [member](SimConfig& c, const std::string&, const std::string& v) { c.*member = v; },
        [member](const SimConfig& c) { return c.*member; }};
  };
  auto ch_dbl = [](auto member) {
    return KeyBinding{
        [member](SimConfig& c, const std::string& k, const std::string& v) {
          c.channel.*member = parse_double(k, v);
        },
        [member](const SimConfig& c) { return fmt_g17(c.channel.*member); }};
  };
  auto wf_dbl = [](auto member) {
    return KeyBinding{
        [member](SimConfig& c, const std::string& k, const std::string& v) {
          c.wifi.*member = parse_double(k, v);
        },
        [member](const SimConfig& c) { return fmt_g17(c.wifi.*member); }};
  };
  auto wf_num = [](auto member) {
    return KeyBinding{
        [member](SimConfig& c, const std::string& k, const std::string& v) {
          c.wifi.*member = parse_int(k, v);
        },
        [member](const SimConfig& c) { return std::to_string(c.wifi.*member); }};
  };

  static const std::vector<std::pair<std::string, KeyBinding>> table = {
      {"k_lte_only", num(&SimConfig::k_lte_only)},
      {"m_wifi_only", num(&SimConfig::m_wifi_only)},
      {"n_dual", num(&SimConfig::n_dual)},
      {"num_rbs", num(&SimConfig::num_rbs)},
      {"rb_bandwidth_hz", dbl(&SimConfig::rb_bandwidth_hz)},
      {"tti_s", dbl(&SimConfig::tti_s)},
      {"window_ttis", num(&SimConfig::window_ttis)},
      {"total_windows", num(&SimConfig::total_windows)},
      {"r_min_bps", dbl(&SimConfig::r_min_bps)},
      {"count_max", num(&SimConfig::count_max)},
      {"deferral_counting", str(&SimConfig::deferral_counting)},
      {"tau_ttis", dbl(&SimConfig::tau_ttis)},
      {"pf_epsilon_bps", dbl(&SimConfig::pf_epsilon_bps)},
      {"lte_cap_bps", dbl(&SimConfig::lte_cap_bps)},
      {"wifi_cap_bps", dbl(&SimConfig::wifi_cap_bps)},
      {"mac_efficiency", dbl(&SimConfig::mac_efficiency)},
      {"floor_margin", dbl(&SimConfig::floor_margin)},
      {"seed",
       {[](SimConfig& c, const std::string& k, const std::string& v) {
          c.seed = parse_u64(k, v);
        },
        [](const SimConfig& c) { return std::to_string(c.seed); }}},
      {"placement", str(&SimConfig::placement)},
      {"channel.cell_radius_m", ch_dbl(&ChannelParams::cell_radius_m)},
      {"channel.pathloss_exponent", ch_dbl(&ChannelParams::pathloss_exponent)},
      {"channel.ref_loss_db", ch_dbl(&ChannelParams::ref_loss_db)},
      {"channel.noise_floor_dbm", ch_dbl(&ChannelParams::noise_floor_dbm)},
      {"channel.tx_power_lte_dbm", ch_dbl(&ChannelParams::tx_power_lte_dbm)},
      {"channel.tx_power_wifi_dbm", ch_dbl(&ChannelParams::tx_power_wifi_dbm)},
      {"channel.fading_enabled",
       {[](SimConfig& c, const std::string& k, const std::string& v) {
          c.channel.fading_enabled = parse_bool(k, v);
        },
        [](const SimConfig& c) {
          return std::string(c.channel.fading_enabled ? "true" : "false");
        }}},
      {"channel.fading_block_len_windows",
       {[](SimConfig& c, const std::string& k, const std::string& v) {
          c.channel.fading_block_len_windows = parse_int(k, v);
        },
        [](const SimConfig& c) { return std::to_string(c.channel.fading_block_len_windows); }}},
      {"channel.efficiency", ch_dbl(&ChannelParams::efficiency)},
      {"channel.lte_link_max_bps", ch_dbl(&ChannelParams::lte_link_max_bps)},
      {"channel.wifi_link_max_bps", ch_dbl(&ChannelParams::wifi_link_max_bps)},
      {"wifi.slot_time_s", wf_dbl(&WifiParams::slot_time_s)},
      {"wifi.cw_min", wf_num(&WifiParams::cw_min)},
      {"wifi.cw_max", wf_num(&WifiParams::cw_max)},
      {"wifi.max_stage", wf_num(&WifiParams::max_stage)},
      {"wifi.payload_bits", wf_dbl(&WifiParams::payload_bits)},
      {"wifi.success_overhead_s", wf_dbl(&WifiParams::success_overhead_s)},
      {"wifi.collision_overhead_s", wf_dbl(&WifiParams::collision_overhead_s)},
      {"wifi.phy_rate_bps", wf_dbl(&WifiParams::phy_rate_bps)},
      {"wifi.rts_enabled",
       {[](SimConfig& c, const std::string& k, const std::string& v) {
          c.wifi.rts_enabled = parse_bool(k, v);
        },
        [](const SimConfig& c) { return std::string(c.wifi.rts_enabled ? "true" : "false"); }}},
      {"wifi.min_phy_rate_bps", wf_dbl(&WifiParams::min_phy_rate_bps)},
      {"wifi.bandwidth_hz", wf_dbl(&WifiParams::bandwidth_hz)},
  };
  return table;
}

}  // namespace detail

// Parse config text over the defaults. Throws ConfigError naming the key on
// unknown keys, bad values, or constraint violations.
inline SimConfig parse_config_text(const std::string& text) {
  SimConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value': " + line);
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    bool found = false;
    for (const auto& [name, binding] : detail::key_table()) {
      if (name == key) {
        binding.set(config, key, value);
        found = true;
        break;
      }
    }
    if (!found) throw ConfigError(key, "unknown key");
  }
  config.validate();
  return config;
}

inline SimConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

// Canonical text form: every key, table order, full precision. Parsing it
// back reproduces the config bit-exactly.
inline std::string serialize_config(const SimConfig& config) {
  std::string out;
  for (const auto& [name, binding] : detail::key_table()) {
    out += name;
    out += " = ";
    out += binding.get(config);
    out += "\n";
  }
  return out;
}

// FNV-1a 64-bit digest of the canonical form; identifies the resolved config
// in run manifests.
inline std::string config_digest(const SimConfig& config) {
  const std::string text = serialize_config(config);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace coexsim
