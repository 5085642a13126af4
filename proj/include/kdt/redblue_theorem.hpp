#pragma once
#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "kdt/redblue.hpp"

namespace kdt {

struct TrichotomyReport {
  int k = 0;
  int threshold = 0;                 // count demanded by condition (ii)
  bool shallow_collinearity = false; // (i)
  int shallow_cocirc_count = 0;
  bool shallow_cocircs = false;      // (ii)
  std::vector<int> obstruction;      // A = A_R + A_B, point ids
  bool obstruction_small = false;    // |A| <= 3k
  bool obstruction_verified = false; // pq in DT(P \ A) throughout
  bool obstruction_holds = false;    // (iii)
  bool ok() const { return shallow_collinearity || shallow_cocircs || obstruction_holds; }
};

// The trichotomy of the red-blue arrangement: given pq Delaunay at one
// endpoint of (t0, t1) and a constant k > 12, at least one of
//   (i)  a k-shallow collinearity of p, q and a third point inside the
//        interval,
//   (ii) at least `threshold` k-shallow co-circularities involving p and q,
//   (iii) a set A of at most 3k points whose removal keeps pq Delaunay
//        throughout, built from the functions that reach level ceil(k/3),
// must hold.  The omega(k^2) constant is a parameter; the default mirrors
// the ceil(k/12) * ceil(k/6) counting of the constructive proof.
inline TrichotomyReport redblue_theorem_check(const std::vector<MovingPoint>& pts,
                                              std::size_t p, std::size_t q, const Rat& t0,
                                              const Rat& t1, int k, int threshold = -1) {
  if (k <= 12) throw precondition_violated("redblue_theorem_check: k must exceed 12");
  if (!(t0 < t1)) throw precondition_violated("redblue_theorem_check: empty interval");
  if (!edge_delaunay_at(pts, p, q, t0, false) && !edge_delaunay_at(pts, p, q, t1, false))
    throw precondition_violated("redblue_theorem_check: pq Delaunay at neither endpoint");

  TrichotomyReport rep;
  rep.k = k;
  rep.threshold = threshold >= 0 ? threshold : (k * k) / 144;
  const int cap = (k + 2) / 3;  // ceil(k/3)

  IsolatedRoot rlo = IsolatedRoot::from_rational(t0), rhi = IsolatedRoot::from_rational(t1);

  // (i) shallow collinearities of p, q and any third point
  for (std::size_t s = 0; s < pts.size() && !rep.shallow_collinearity; ++s) {
    if (s == p || s == q) continue;
    TimePoly f = orient_det_poly(pts[p], pts[q], pts[s]);
    if (f.is_zero()) throw instance_degenerate("triple collinear at all times");
    for (auto& root : isolate_roots(f, t0, t1)) {
      if (root.compare(rlo) <= 0 || root.compare(rhi) >= 0) continue;
      int left = 0, right = 0;
      for (std::size_t w = 0; w < pts.size(); ++w) {
        if (w == p || w == q || w == s) continue;
        int o = orient_at(pts[p], pts[q], pts[w], root);
        if (o > 0)
          ++right;
        else if (o < 0)
          ++left;
      }
      if (std::min(left, right) <= k) {
        rep.shallow_collinearity = true;
        break;
      }
    }
  }

  // (ii) k-shallow co-circularities through p and q
  for (std::size_t a = 0; a < pts.size(); ++a) {
    if (a == p || a == q) continue;
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if (b == p || b == q) continue;
      TimePoly d = cocircularity_det_poly(pts[p], pts[q], pts[a], pts[b]);
      if (d.is_zero()) throw instance_degenerate("quadruple co-circular at all times");
      for (auto& root : isolate_roots(d, t0, t1)) {
        if (root.compare(rlo) <= 0 || root.compare(rhi) >= 0) continue;
        int inside = 0;
        for (std::size_t w = 0; w < pts.size() && inside <= k; ++w) {
          if (w == p || w == q || w == a || w == b) continue;
          if (incircle_at(pts[p], pts[q], pts[a], pts[w], root) > 0) ++inside;
        }
        if (inside <= k) ++rep.shallow_cocirc_count;
      }
    }
  }
  rep.shallow_cocircs = rep.shallow_cocirc_count >= rep.threshold;

  // (iii) the constructive obstruction set: points whose red (blue) function
  // reaches red (blue) level at most ceil(k/3) somewhere in the interval
  {
    auto crit = edge_critical_times(pts, p, q, rlo, rhi);
    std::vector<const IsolatedRoot*> fence;
    fence.push_back(&rlo);
    for (auto& r : crit.times) fence.push_back(&r);
    fence.push_back(&rhi);
    std::set<int> obstruction;
    for (std::size_t i = 0; i + 1 < fence.size(); ++i) {
      if (fence[i]->compare(*fence[i + 1]) >= 0) continue;
      Rat sample = rational_between(*fence[i], *fence[i + 1]);
      auto samples = redblue_samples(pts, p, q, sample);
      for (const auto& u : samples) {
        int level = 0;
        for (const auto& v : samples) {
          if (v.id == u.id || v.red != u.red) continue;
          if (u.red ? v.value < u.value : v.value > u.value) ++level;
        }
        if (level <= cap) obstruction.insert(u.id);
      }
    }
    rep.obstruction.assign(obstruction.begin(), obstruction.end());
    rep.obstruction_small = static_cast<int>(rep.obstruction.size()) <= 3 * k;
    if (rep.obstruction_small) {
      std::vector<MovingPoint> reduced;
      for (const auto& pt : pts)
        if (!obstruction.count(pt.id)) reduced.push_back(pt);
      std::size_t pu = 0, pv = 0;
      for (std::size_t s = 0; s < reduced.size(); ++s) {
        if (reduced[s].id == pts[p].id) pu = s;
        if (reduced[s].id == pts[q].id) pv = s;
      }
      rep.obstruction_verified = edge_delaunay_throughout(reduced, pu, pv, rlo, rhi);
    }
    rep.obstruction_holds = rep.obstruction_small && rep.obstruction_verified;
  }
  return rep;
}

}  // namespace kdt
