#include <cstring>

#include <catch_amalgamated.hpp>

#include "coexsim/channel.hpp"
#include "coexsim/rng.hpp"

using namespace coexsim;

namespace {

ChannelParams reference_params() {
  ChannelParams p;
  p.cell_radius_m = 300.0;
  p.pathloss_exponent = 3.5;
  p.ref_loss_db = 40.0;
  p.noise_floor_dbm = -96.0;
  p.tx_power_lte_dbm = 23.0;
  p.tx_power_wifi_dbm = 23.0;
  return p;
}

}  // namespace

TEST_CASE("snr_db at the 1 m reference distance") {
  // log10(1) = 0 removes the distance term: 23 - 40 + 96 = 79 dB.
  const ChannelParams p = reference_params();
  CHECK(snr_db(p, 1.0, Interface::kLte, 1.0) == Catch::Approx(79.0));
}

TEST_CASE("snr_db follows the log-distance law") {
  // d = 100 m: 79 - 10 * 3.5 * 2 = 9 dB.
  const ChannelParams p = reference_params();
  CHECK(snr_db(p, 100.0, Interface::kLte, 1.0) == Catch::Approx(9.0));
}

TEST_CASE("unit fading draw equals the fading-disabled path") {
  ChannelParams p = reference_params();
  p.fading_enabled = false;
  const double base = snr_db(p, 42.0, Interface::kWifi, 1.0);
  p.fading_enabled = true;
  CHECK(snr_db(p, 42.0, Interface::kWifi, 1.0) == base);
}

TEST_CASE("snr_db rejects non-positive distance") {
  const ChannelParams p = reference_params();
  CHECK_THROWS_AS(snr_db(p, 0.0, Interface::kLte, 1.0), std::domain_error);
  CHECK_THROWS_AS(snr_db(p, -5.0, Interface::kLte, 1.0), std::domain_error);
}

TEST_CASE("snr_to_rate on the Shannon anchor points") {
  // 0 dB, 1 MHz, eff 1: log2(1+1) = 1 -> 1 Mbit/s.
  CHECK(snr_to_rate(0.0, 1e6, 1.0, 1e12) == Catch::Approx(1e6));
  // 15 dB: log2(1 + 10^1.5) computed independently = 5.0278076733505195e6.
  CHECK(snr_to_rate(15.0, 1e6, 1.0, 1e12) == Catch::Approx(5.0278076733505195e6).epsilon(1e-9));
  // Deep fade: effectively zero.
  CHECK(snr_to_rate(-200.0, 1e9, 1.0, 1e12) < 1.0);
}

TEST_CASE("snr_to_rate honors the link ceiling") {
  CHECK(snr_to_rate(60.0, 20e6, 1.0, 54e6) == 54e6);
  for (double snr = -40.0; snr <= 60.0; snr += 0.5)
    CHECK(snr_to_rate(snr, 10e6, 0.75, 54e6) <= 54e6);
}

TEST_CASE("snr_to_rate is monotone in SNR and linear in bandwidth") {
  double prev = -1.0;
  for (double snr = -60.0; snr <= 80.0; snr += 0.25) {
    const double r = snr_to_rate(snr, 5e6, 0.8, 1e15);
    CHECK(r >= prev);
    prev = r;
  }
  const double r1 = snr_to_rate(12.0, 1e6, 0.8, 1e15);
  for (double scale : {2.0, 5.0, 80.0})
    CHECK(snr_to_rate(12.0, scale * 1e6, 0.8, 1e15) == Catch::Approx(scale * r1));
}

TEST_CASE("channel functions are bit-deterministic") {
  const ChannelParams p = reference_params();
  const double a = snr_db(p, 123.456, Interface::kWifi, 0.7891);
  const double b = snr_db(p, 123.456, Interface::kWifi, 0.7891);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
  const double r1 = snr_to_rate(a, 20e6, 0.75, 54e6);
  const double r2 = snr_to_rate(b, 20e6, 0.75, 54e6);
  CHECK(std::memcmp(&r1, &r2, sizeof r1) == 0);
}

TEST_CASE("channel params validation") {
  ChannelParams p = reference_params();
  p.pathloss_exponent = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = reference_params();
  p.efficiency = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = reference_params();
  p.cell_radius_m = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("exponential fading draws have unit mean") {
  RandomStream rng(7, kStreamChannel);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += rng.next_exp_unit();
  CHECK(sum / n == Catch::Approx(1.0).margin(0.01));
}
