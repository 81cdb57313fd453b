#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "coexsim/metrics.hpp"
#include "coexsim/sim_engine.hpp"

namespace coexsim {

inline std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Write-to-temp-then-rename so no output file is ever observable half-written.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// Per-UE per-window throughput series: one row per (UE, window).
inline std::string per_ue_csv(const SimReport& report) {
  std::string out = "ue_id,capability,position_m,window_index,rate_bps\n";
  for (size_t i = 0; i < report.ues.size(); ++i) {
    const auto& ue = report.ues[i];
    const auto& series = report.series[i];
    for (size_t w = 0; w < series.size(); ++w) {
      out += std::to_string(ue.id);
      out += ',';
      out += to_string(ue.capability);
      out += ',';
      out += csv_double(ue.position_m);
      out += ',';
      out += std::to_string(w);
      out += ',';
      out += csv_double(series[w]);
      out += '\n';
    }
  }
  return out;
}

// One SchedulerStats row. std_dev is the population standard deviation over
// the mode's participating UEs.
inline std::string stats_csv(const SimReport& report) {
  std::string out =
      "mode,seed,num_ues,users_below_threshold,system_throughput_bps,"
      "max_throughput_bps,min_throughput_bps,std_dev_bps\n";
  const SchedulerStats& s = report.stats;
  out += to_string(report.mode);
  out += ',';
  out += std::to_string(report.seed);
  out += ',';
  out += std::to_string(s.num_ues);
  out += ',';
  out += std::to_string(s.users_below_threshold);
  out += ',';
  out += csv_double(s.system_throughput_bps);
  out += ',';
  out += csv_double(s.max_throughput_bps);
  out += ',';
  out += csv_double(s.min_throughput_bps);
  out += ',';
  out += csv_double(s.std_dev_bps);
  out += '\n';
  return out;
}

// Mean of each statistic over a seed sweep (one mode).
struct AggregateStats {
  double num_ues = 0;
  double users_below_threshold = 0;
  double system_throughput_bps = 0;
  double max_throughput_bps = 0;
  double min_throughput_bps = 0;
  double std_dev_bps = 0;

  static AggregateStats mean_of(const std::vector<SchedulerStats>& all) {
    AggregateStats agg;
    if (all.empty()) return agg;
    for (const auto& s : all) {
      agg.num_ues += s.num_ues;
      agg.users_below_threshold += s.users_below_threshold;
      agg.system_throughput_bps += s.system_throughput_bps;
      agg.max_throughput_bps += s.max_throughput_bps;
      agg.min_throughput_bps += s.min_throughput_bps;
      agg.std_dev_bps += s.std_dev_bps;
    }
    const double n = static_cast<double>(all.size());
    agg.num_ues /= n;
    agg.users_below_threshold /= n;
    agg.system_throughput_bps /= n;
    agg.max_throughput_bps /= n;
    agg.min_throughput_bps /= n;
    agg.std_dev_bps /= n;
    return agg;
  }
};

// Table-shaped mode comparison: one row per statistic, one column per mode,
// plus joint/lte and joint/wifi ratio columns. For sweeps the cells are
// means over seeds and the ratios are ratios of those means.
inline std::string comparison_csv(const AggregateStats& lte, const AggregateStats& wifi,
                                  const AggregateStats& joint) {
  auto ratio = [](double num, double den) {
    return den != 0.0 ? csv_double(num / den) : std::string("nan");
  };
  std::string out = "metric,lte,wifi,joint,joint_over_lte,joint_over_wifi\n";
  auto row = [&](const char* name, double l, double w, double j) {
    out += name;
    out += ',';
    out += csv_double(l);
    out += ',';
    out += csv_double(w);
    out += ',';
    out += csv_double(j);
    out += ',';
    out += ratio(j, l);
    out += ',';
    out += ratio(j, w);
    out += '\n';
  };
  row("users_below_threshold", lte.users_below_threshold, wifi.users_below_threshold,
      joint.users_below_threshold);
  row("system_throughput_bps", lte.system_throughput_bps, wifi.system_throughput_bps,
      joint.system_throughput_bps);
  row("max_throughput_bps", lte.max_throughput_bps, wifi.max_throughput_bps,
      joint.max_throughput_bps);
  row("min_throughput_bps", lte.min_throughput_bps, wifi.min_throughput_bps,
      joint.min_throughput_bps);
  row("std_dev_bps", lte.std_dev_bps, wifi.std_dev_bps, joint.std_dev_bps);
  return out;
}

}  // namespace coexsim
