#pragma once
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "kdt/crossings.hpp"
#include "kdt/instance.hpp"
#include "kdt/kinetic.hpp"
#include "kdt/parallel.hpp"

namespace kdt {

struct GrowthRow {
  int n = 0;
  std::uint64_t seed = 0;
  long flips = -1;
  long hull_events = -1;
  long single_crossings = -1;  // -1: not computed (above the oracle cap)
  long double_crossings = -1;
  double wall_seconds = 0;
  std::string error;
};

struct GrowthReport {
  std::vector<GrowthRow> rows;           // sorted by (n, seed)
  std::vector<std::pair<int, double>> mean_flips;  // per n, seed-averaged
  double slope = 0;                      // log-log fit of mean flips vs n
  bool counts_monotone = false;

  void write_csv(std::ostream& os) const {
    os << "n,seed,flips,hull_events,single_crossings,double_crossings,wall_seconds,error\n";
    for (const auto& r : rows) {
      os << r.n << "," << r.seed << "," << r.flips << "," << r.hull_events << ","
         << r.single_crossings << "," << r.double_crossings << "," << r.wall_seconds
         << "," << r.error << "\n";
    }
    os << "# slope " << slope << "\n";
  }
};

struct GrowthOptions {
  Rat window_lo = Rat(0), window_hi = Rat(10);
  GenKind kind = GenKind::Uniform;
  int crossings_cap = 16;  // exact crossing detection only up to this n
  bool count_crossings = false;
};

// Fast-path growth measurement: flips and hull events per (n, seed), slope
// of the seed-averaged flip counts on a log-log scale.  Per-row failures are
// recorded, not fatal.
inline GrowthReport run_growth(const std::vector<int>& n_list, int seeds_per_n,
                               const GrowthOptions& opt = {}) {
  GrowthReport rep;
  std::vector<std::pair<int, std::uint64_t>> jobs;
  for (int n : n_list)
    for (int s = 1; s <= seeds_per_n; ++s)
      jobs.emplace_back(n, static_cast<std::uint64_t>(s));
  rep.rows.resize(jobs.size());

  parallel_ranges(jobs.size(), [&](int, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      auto [n, seed] = jobs[i];
      GrowthRow row;
      row.n = n;
      row.seed = seed;
      auto t_start = std::chrono::steady_clock::now();
      try {
        auto doc = generate(opt.kind, n, seed);
        auto kt = build_initial(doc.points, opt.window_lo);
        AdvanceOptions adv;
        adv.policy = TimePolicy::Fast;
        auto log = advance(kt, opt.window_hi, adv);
        row.flips = static_cast<long>(log.flip_count());
        row.hull_events = static_cast<long>(log.hull_count());
        if (opt.count_crossings && n <= opt.crossings_cap) {
          auto cs = detect_crossings(doc.points, opt.window_lo, opt.window_hi);
          row.single_crossings = 0;
          row.double_crossings = 0;
          for (const auto& c : cs.crossings)
            (c.double_crossing ? row.double_crossings : row.single_crossings) += 1;
        }
      } catch (const kdt_error& ex) {
        row.error = ex.what();
      }
      row.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
      rep.rows[i] = std::move(row);
    }
  });

  for (int n : n_list) {
    double sum = 0;
    int cnt = 0;
    for (const auto& r : rep.rows)
      if (r.n == n && r.error.empty()) {
        sum += static_cast<double>(r.flips);
        ++cnt;
      }
    if (cnt > 0) rep.mean_flips.emplace_back(n, sum / cnt);
  }
  rep.counts_monotone = true;
  for (std::size_t i = 1; i < rep.mean_flips.size(); ++i)
    rep.counts_monotone &= rep.mean_flips[i].second >= rep.mean_flips[i - 1].second;

  if (rep.mean_flips.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (auto& [n, f] : rep.mean_flips) {
      if (f <= 0) continue;
      double x = std::log(static_cast<double>(n)), y = std::log(f);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++m;
    }
    if (m >= 2) rep.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return rep;
}

}  // namespace kdt
