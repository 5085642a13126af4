#pragma once
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "kdt/oracle.hpp"

namespace kdt {

struct SamplingReport {
  int n = 0, k = 0, trials = 0, sample_size = 0;
  std::size_t shallow_events = 0;  // census co-circularities with level <= k
  double mean_empirical = 0;       // mean over trials of the survival fraction
  double mean_exact = 0;           // hypergeometric expectation
  double stderr_trials = 0;        // standard error over trials
  double ratio_to_inv_k4 = 0;      // mean_empirical * k^4
  bool within_3se = true;
};

namespace detail {

inline double hypergeometric_survival(int n, int m, int level) {
  // P[4 fixed points chosen, `level` fixed points not chosen | sample of m]
  if (m < 4 || n - 4 - level < m - 4) return 0;
  mpz_class num, den;
  mpz_bin_uiui(num.get_mpz_t(), static_cast<unsigned long>(n - 4 - level),
               static_cast<unsigned long>(m - 4));
  mpz_bin_uiui(den.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(m));
  return Rat(num, den).get_d();
}

}  // namespace detail

// Random-sampling experiment: draw `trials` samples R of ceil(n/k) points;
// a k-shallow co-circularity survives a draw when its four points are all
// in R and its interior witnesses all are not.  Reports the empirical
// survival frequency against the exact hypergeometric value and against the
// 1/k^4 scaling law.
inline SamplingReport clarkson_shor_experiment(const std::vector<MovingPoint>& pts,
                                               const GlobalEventCensus& census, int k,
                                               int trials, std::uint64_t seed) {
  SamplingReport rep;
  rep.n = static_cast<int>(pts.size());
  rep.k = k;
  rep.trials = trials;
  rep.sample_size = (rep.n + k - 1) / k;
  if (rep.sample_size < 4)
    throw precondition_violated("clarkson_shor_experiment: sample size below 4");

  std::vector<const CocircEvent*> shallow;
  for (const auto& e : census.cocircularities)
    if (e.level <= k) shallow.push_back(&e);
  rep.shallow_events = shallow.size();
  if (shallow.empty() || trials <= 0) return rep;

  for (const auto* e : shallow)
    rep.mean_exact += detail::hypergeometric_survival(rep.n, rep.sample_size, e->level);
  rep.mean_exact /= static_cast<double>(shallow.size());

  std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
  std::vector<int> pool(static_cast<std::size_t>(rep.n));
  for (int i = 0; i < rep.n; ++i) pool[static_cast<std::size_t>(i)] = pts[static_cast<std::size_t>(i)].id;
  std::vector<char> chosen(1024, 0);
  for (const auto& p : pts)
    if (p.id >= static_cast<int>(chosen.size())) chosen.resize(static_cast<std::size_t>(p.id) + 1, 0);

  double sum = 0, sumsq = 0;
  for (int t = 0; t < trials; ++t) {
    // partial Fisher-Yates for the first sample_size slots
    for (int i = 0; i < rep.sample_size; ++i) {
      std::size_t j = static_cast<std::size_t>(i) +
                      static_cast<std::size_t>(rng() % static_cast<unsigned long>(rep.n - i));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
      chosen[static_cast<std::size_t>(pool[static_cast<std::size_t>(i)])] = 1;
    }
    std::size_t survived = 0;
    for (const auto* e : shallow) {
      bool ok = true;
      for (int id : e->quad) ok &= chosen[static_cast<std::size_t>(id)] != 0;
      if (ok)
        for (int id : e->inside) ok &= chosen[static_cast<std::size_t>(id)] == 0;
      survived += ok;
    }
    for (int i = 0; i < rep.sample_size; ++i)
      chosen[static_cast<std::size_t>(pool[static_cast<std::size_t>(i)])] = 0;
    double x = static_cast<double>(survived) / static_cast<double>(shallow.size());
    sum += x;
    sumsq += x * x;
  }
  rep.mean_empirical = sum / trials;
  double var = (sumsq - sum * sum / trials) / std::max(1, trials - 1);
  rep.stderr_trials = std::sqrt(std::max(0.0, var) / trials);
  rep.ratio_to_inv_k4 = rep.mean_empirical * std::pow(static_cast<double>(k), 4.0);
  double dev = std::abs(rep.mean_empirical - rep.mean_exact);
  rep.within_3se = rep.stderr_trials == 0 ? dev == 0 : dev <= 3 * rep.stderr_trials;
  return rep;
}

}  // namespace kdt
