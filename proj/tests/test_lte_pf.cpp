#include <cmath>
#include <map>
#include <vector>

#include <catch_amalgamated.hpp>

#include "coexsim/lte_pf.hpp"
#include "coexsim/rng.hpp"
#include "oracles.hpp"

using namespace coexsim;

namespace {

PfState make_state(const std::map<int, double>& avgs, double tau = 100.0) {
  PfState st;
  st.tau_ttis = tau;
  for (const auto& [ue, avg] : avgs) st.avg_bps[ue] = avg;
  return st;
}

}  // namespace

TEST_CASE("pf_metric basics") {
  CHECK(pf_metric(1e6, 1e6) == Catch::Approx(1.0));
  CHECK(pf_metric(2e6, 0.5e6) == Catch::Approx(4.0));
  CHECK_THROWS_AS(pf_metric(1e6, 0.0), std::domain_error);
  CHECK_THROWS_AS(pf_metric(1e6, -1.0), std::domain_error);
}

TEST_CASE("highest metric wins the RB") {
  // Metrics {4.0, 1.0, 0.25}: the starved UE (low average) is scheduled.
  const PfState st = make_state({{0, 0.5e6}, {1, 2e6}, {2, 8e6}});
  const std::vector<TtiCandidate> cands = {{0, {2e6}}, {1, {2e6}}, {2, {2e6}}};
  const TtiAllocation alloc = allocate_tti(cands, st, 1, 1e-3);
  REQUIRE(alloc.rb_to_ue.size() == 1);
  CHECK(alloc.rb_to_ue[0] == 0);
}

TEST_CASE("single candidate takes every RB") {
  const PfState st = make_state({{7, 1e6}});
  const TtiAllocation alloc = allocate_tti({{7, {3e6}}}, st, 5, 1e-3);
  for (int ue : alloc.rb_to_ue) CHECK(ue == 7);
  CHECK(alloc.achieved_bits.at(7) == Catch::Approx(5 * 3e6 * 1e-3));
}

TEST_CASE("ties break toward the lowest UE id") {
  const PfState st = make_state({{3, 1e6}, {9, 1e6}});
  const TtiAllocation alloc = allocate_tti({{9, {2e6}}, {3, {2e6}}}, st, 4, 1e-3);
  for (int ue : alloc.rb_to_ue) CHECK(ue == 3);
}

TEST_CASE("empty candidate set leaves all RBs idle") {
  const PfState st = make_state({});
  const TtiAllocation alloc = allocate_tti({}, st, 3, 1e-3);
  for (int ue : alloc.rb_to_ue) CHECK(ue == -1);
  CHECK(alloc.achieved_bits.empty());
}

TEST_CASE("untracked candidate is rejected") {
  const PfState st = make_state({{0, 1e6}});
  CHECK_THROWS_AS(allocate_tti({{1, {1e6}}}, st, 1, 1e-3), std::invalid_argument);
}

TEST_CASE("allocate_tti matches the exhaustive per-RB argmax") {
  RandomStream rng(2024, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n_ues = 1 + static_cast<int>(rng.next_below(5));
    const int n_rbs = 1 + static_cast<int>(rng.next_below(6));
    PfState st;
    std::vector<TtiCandidate> cands;
    for (int u = 0; u < n_ues; ++u) {
      st.avg_bps[u] = 1e3 + rng.next_unit() * 5e6;
      TtiCandidate c;
      c.ue_id = u;
      const bool flat = rng.next_below(2) == 0;
      const int entries = flat ? 1 : n_rbs;
      for (int k = 0; k < entries; ++k) c.rb_rates_bps.push_back(rng.next_unit() * 1e7);
      cands.push_back(c);
    }
    const TtiAllocation got = allocate_tti(cands, st, n_rbs, 1e-3);
    const TtiAllocation want = oracles::brute_force_tti(cands, st, n_rbs, 1e-3);
    REQUIRE(got.rb_to_ue == want.rb_to_ue);
    for (const auto& [ue, bits] : want.achieved_bits)
      CHECK(got.achieved_bits.at(ue) == Catch::Approx(bits));
  }
}

TEST_CASE("assignment is invariant to scaling every average") {
  RandomStream rng(99, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n_ues = 2 + static_cast<int>(rng.next_below(4));
    const int n_rbs = 1 + static_cast<int>(rng.next_below(6));
    PfState st;
    std::vector<TtiCandidate> cands;
    for (int u = 0; u < n_ues; ++u) {
      st.avg_bps[u] = 1e3 + rng.next_unit() * 1e6;
      cands.push_back({u, {rng.next_unit() * 1e7}});
    }
    PfState scaled = st;
    const double c = 0.25 + rng.next_unit() * 8.0;
    for (auto& [ue, avg] : scaled.avg_bps) avg *= c;
    CHECK(allocate_tti(cands, st, n_rbs, 1e-3).rb_to_ue ==
          allocate_tti(cands, scaled, n_rbs, 1e-3).rb_to_ue);
  }
}

TEST_CASE("no RB is double booked and the RB count is conserved") {
  const PfState st = make_state({{0, 1e5}, {1, 2e6}, {2, 3e6}});
  const TtiAllocation alloc = allocate_tti({{0, {1e6}}, {1, {5e6}}, {2, {2e6}}}, st, 6, 1e-3);
  CHECK(alloc.rb_to_ue.size() == 6);
  int assigned = 0;
  for (int ue : alloc.rb_to_ue)
    if (ue >= 0) ++assigned;
  CHECK(assigned <= 6);
  double total_bits = 0;
  for (const auto& [ue, bits] : alloc.achieved_bits) total_bits += bits;
  CHECK(total_bits <= 5e6 * 1e-3 * 6 + 1e-9);
}

TEST_CASE("update_average fixed point and hand example") {
  PfState st = make_state({{0, 4.0}}, 2.0);
  update_average(st, {{0, 8.0}});
  CHECK(st.avg_bps[0] == Catch::Approx(6.0));  // 0.5*4 + 0.5*8

  PfState fixed = make_state({{0, 5e5}}, 37.0);
  update_average(fixed, {{0, 5e5}});
  CHECK(fixed.avg_bps[0] == Catch::Approx(5e5));
}

TEST_CASE("starved averages decay geometrically to the floor") {
  PfState st = make_state({{0, 16.0}}, 4.0);
  for (int i = 0; i < 6; ++i) update_average(st, {});
  CHECK(st.avg_bps[0] == Catch::Approx(16.0 * std::pow(0.75, 6)));  // 2.84765625
  for (int i = 0; i < 5000; ++i) update_average(st, {});
  CHECK(st.avg_bps[0] == st.epsilon_bps);
}

TEST_CASE("update_average rejects untracked UEs") {
  PfState st = make_state({{0, 1.0}});
  CHECK_THROWS_AS(update_average(st, {{5, 1e6}}), std::invalid_argument);
}

TEST_CASE("symmetric UEs converge to equal RB shares") {
  // Four identical static channels; long-run shares must even out within 5%.
  PfState st;
  std::vector<TtiCandidate> cands;
  std::map<int, long> rbs_won;
  for (int u = 0; u < 4; ++u) {
    st.track(u);
    cands.push_back({u, {4e6}});
    rbs_won[u] = 0;
  }
  const int num_rbs = 6;
  const int ttis = 20000;
  for (int t = 0; t < ttis; ++t) {
    const TtiAllocation alloc = allocate_tti(cands, st, num_rbs, 1e-3);
    std::map<int, double> achieved;
    for (int u = 0; u < 4; ++u) {
      rbs_won[u] += alloc.rbs_won(u);
      auto it = alloc.achieved_bits.find(u);
      achieved[u] = it == alloc.achieved_bits.end() ? 0.0 : it->second / 1e-3;
    }
    update_average(st, achieved);
  }
  const double equal_share = num_rbs * static_cast<double>(ttis) / 4.0;
  for (int u = 0; u < 4; ++u)
    CHECK(std::abs(rbs_won[u] - equal_share) / equal_share < 0.05);
}
