#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coexsim {

enum class Interface { kLte, kWifi };

// Log-distance path loss with optional unit-mean exponential block fading.
// All positions reduce to a distance from the cell center; the eNB and the
// AP are colocated there.
struct ChannelParams {
  double cell_radius_m = 300.0;
  double pathloss_exponent = 3.5;   // >= 2
  double ref_loss_db = 38.0;        // loss at 1 m
  double noise_floor_dbm = -95.0;   // integrated over the carrier bandwidth
  double tx_power_lte_dbm = 30.0;
  double tx_power_wifi_dbm = 15.0;
  bool fading_enabled = true;
  int fading_block_len_windows = 1;  // redraw period, in measurement windows
  double efficiency = 0.75;          // spectral efficiency factor, (0,1]
  double lte_link_max_bps = 100e6;   // PHY ceiling of one LTE link
  double wifi_link_max_bps = 54e6;   // PHY ceiling of one WiFi link

  void validate() const {
    if (cell_radius_m <= 0) throw std::invalid_argument("channel.cell_radius_m must be > 0");
    if (pathloss_exponent < 2) throw std::invalid_argument("channel.pathloss_exponent must be >= 2");
    if (efficiency <= 0 || efficiency > 1) throw std::invalid_argument("channel.efficiency must be in (0,1]");
    if (fading_block_len_windows < 1) throw std::invalid_argument("channel.fading_block_len_windows must be >= 1");
    if (lte_link_max_bps <= 0) throw std::invalid_argument("channel.lte_link_max_bps must be > 0");
    if (wifi_link_max_bps <= 0) throw std::invalid_argument("channel.wifi_link_max_bps must be > 0");
  }

  double tx_power_dbm(Interface iface) const {
    return iface == Interface::kLte ? tx_power_lte_dbm : tx_power_wifi_dbm;
  }

  double link_max_bps(Interface iface) const {
    return iface == Interface::kLte ? lte_link_max_bps : wifi_link_max_bps;
  }
};

// SNR of one link at `distance_m` from the transmitter. `fading_draw` is a
// linear power gain (1 when fading is off; unit-mean exponential otherwise).
inline double snr_db(const ChannelParams& params, double distance_m,
                     Interface iface, double fading_draw = 1.0) {
  if (distance_m <= 0) throw std::domain_error("snr_db: distance must be > 0");
  if (fading_draw <= 0) throw std::domain_error("snr_db: fading draw must be > 0");
  const double pathloss_db =
      params.ref_loss_db + 10.0 * params.pathloss_exponent * std::log10(distance_m);
  return params.tx_power_dbm(iface) - pathloss_db - params.noise_floor_dbm +
         10.0 * std::log10(fading_draw);
}

// Truncated-Shannon rate map: eff * bw * log2(1 + SNR), clamped to the link
// ceiling. Monotone nondecreasing in snr and linear in bandwidth below the
// clamp.
inline double snr_to_rate(double snr_db_value, double bandwidth_hz,
                          double efficiency, double max_rate_bps) {
  if (bandwidth_hz <= 0) throw std::domain_error("snr_to_rate: bandwidth must be > 0");
  const double snr_linear = std::pow(10.0, snr_db_value / 10.0);
  const double rate = efficiency * bandwidth_hz * std::log2(1.0 + snr_linear);
  return std::clamp(rate, 0.0, max_rate_bps);
}

}  // namespace coexsim
