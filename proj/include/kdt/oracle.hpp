#pragma once
#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "kdt/errors.hpp"
#include "kdt/kinetic.hpp"
#include "kdt/parallel.hpp"
#include "kdt/predicates.hpp"
#include "kdt/roots.hpp"

namespace kdt {

// Brute-force static Delaunay: a triple is a triangle exactly when its
// circumdisc has no point strictly inside.  Independent of the incremental
// builder; used as its ground truth.  Returns index triples, sorted.
inline std::vector<std::array<int, 3>> brute_force_delaunay(
    const std::vector<MovingPoint>& pts, const Rat& t) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::array<int, 3>> tris;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        bool empty = true;
        try {
          for (int s = 0; s < n && empty; ++s) {
            if (s == i || s == j || s == k) continue;
            if (incircle_at(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)],
                            pts[static_cast<std::size_t>(k)], pts[static_cast<std::size_t>(s)],
                            t) > 0)
              empty = false;
          }
        } catch (const collinear_base&) {
          continue;  // collinear triples span no triangle
        }
        if (empty) tris.push_back({i, j, k});
      }
  std::sort(tris.begin(), tris.end());
  return tris;
}

struct CocircEvent {
  std::array<int, 4> quad;  // original ids, ascending
  IsolatedRoot time;
  int level = -1;           // points strictly inside the common disc
  int index = -1;           // 1..3 rank among the quadruple's roots over all time
  std::vector<int> inside;  // the ids counted by level
};

struct CollinEvent {
  std::array<int, 3> triple;  // original ids, ascending
  IsolatedRoot time;
  int mid = -1;               // the participant between the other two
  int shallowness = -1;       // min(#strictly left, #strictly right) of the line
};

struct GlobalEventCensus {
  Rat window_lo, window_hi;
  std::vector<CocircEvent> cocircularities;
  std::vector<CollinEvent> collinearities;

  // lookups keyed by sorted id tuples
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cocirc_by_quad;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> collin_by_triple;

  static std::uint64_t quad_key(std::array<int, 4> q) {
    std::sort(q.begin(), q.end());
    return ((static_cast<std::uint64_t>(q[0]) & 0xffff) << 48) |
           ((static_cast<std::uint64_t>(q[1]) & 0xffff) << 32) |
           ((static_cast<std::uint64_t>(q[2]) & 0xffff) << 16) |
           (static_cast<std::uint64_t>(q[3]) & 0xffff);
  }
  static std::uint64_t triple_key(std::array<int, 3> q) {
    std::sort(q.begin(), q.end());
    return ((static_cast<std::uint64_t>(q[0]) & 0xffff) << 32) |
           ((static_cast<std::uint64_t>(q[1]) & 0xffff) << 16) |
           (static_cast<std::uint64_t>(q[2]) & 0xffff);
  }

  const std::vector<std::size_t>* cocirc_of(std::array<int, 4> q) const {
    auto it = cocirc_by_quad.find(quad_key(q));
    return it == cocirc_by_quad.end() ? nullptr : &it->second;
  }
  const std::vector<std::size_t>* collin_of(std::array<int, 3> q) const {
    auto it = collin_by_triple.find(triple_key(q));
    return it == collin_by_triple.end() ? nullptr : &it->second;
  }

  void build_indices() {
    cocirc_by_quad.clear();
    collin_by_triple.clear();
    for (std::size_t i = 0; i < cocircularities.size(); ++i)
      cocirc_by_quad[quad_key(cocircularities[i].quad)].push_back(i);
    for (std::size_t i = 0; i < collinearities.size(); ++i)
      collin_by_triple[triple_key(collinearities[i].triple)].push_back(i);
  }
};

struct OracleOptions {
  int max_n = 24;  // desk-scale enumeration cap; override deliberately
};

// Exact number of points strictly inside the common circumdisc at a
// certified co-circularity root, together with their ids.  The root interval
// is refined implicitly until every incircle sign is certified.
inline std::pair<int, std::vector<int>> level_of(const std::vector<MovingPoint>& pts,
                                                 const std::array<int, 4>& quad_idx,
                                                 const IsolatedRoot& root) {
  std::vector<int> inside;
  const MovingPoint& a = pts[static_cast<std::size_t>(quad_idx[0])];
  const MovingPoint& b = pts[static_cast<std::size_t>(quad_idx[1])];
  const MovingPoint& c = pts[static_cast<std::size_t>(quad_idx[2])];
  for (std::size_t s = 0; s < pts.size(); ++s) {
    int si = static_cast<int>(s);
    if (si == quad_idx[0] || si == quad_idx[1] || si == quad_idx[2] || si == quad_idx[3])
      continue;
    if (incircle_at(a, b, c, pts[s], root) > 0) inside.push_back(pts[s].id);
  }
  return {static_cast<int>(inside.size()), inside};
}

// Enumerate every co-circularity and collinearity of the instance inside the
// closed window, with levels, indices, segment classification and
// shallowness.  Theta(n^4) polynomials and Theta(n^5) incircle signs.
inline GlobalEventCensus enumerate_all_events(const std::vector<MovingPoint>& pts,
                                              const Rat& window_lo, const Rat& window_hi,
                                              const OracleOptions& opt = {}) {
  const int n = static_cast<int>(pts.size());
  if (n > opt.max_n)
    throw kdt_error("oracle: n exceeds the enumeration cap (override max_n to force)");
  GlobalEventCensus census;
  census.window_lo = window_lo;
  census.window_hi = window_hi;

  std::vector<std::array<int, 4>> quads;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) quads.push_back({i, j, k, l});
  std::vector<std::array<int, 3>> triples;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) triples.push_back({i, j, k});

  int w = worker_count();
  std::vector<std::vector<CocircEvent>> cocirc_parts(static_cast<std::size_t>(w) + 1);
  std::vector<std::string> errors(static_cast<std::size_t>(w) + 1);

  parallel_ranges(quads.size(), [&](int worker, std::size_t b, std::size_t e) {
    try {
      for (std::size_t qi = b; qi < e; ++qi) {
        const auto& q = quads[qi];
        TimePoly d;
        try {
          d = cocircularity_poly(pts[static_cast<std::size_t>(q[0])],
                                 pts[static_cast<std::size_t>(q[1])],
                                 pts[static_cast<std::size_t>(q[2])],
                                 pts[static_cast<std::size_t>(q[3])]);
        } catch (const degenerate_motion& ex) {
          throw instance_degenerate(ex.what());
        }
        auto roots = isolate_all_roots(d);
        int rank = 0;
        for (auto& r : roots) {
          int index = rank + 1;  // earlier roots counted with multiplicity
          rank += r.multiplicity();
          if (r.compare(IsolatedRoot::from_rational(window_lo)) < 0) continue;
          if (r.compare(IsolatedRoot::from_rational(window_hi)) > 0) continue;
          if (r.multiplicity() != 1)
            throw instance_degenerate("tangential co-circularity (multiplicity > 1)");
          CocircEvent ev;
          ev.quad = {pts[static_cast<std::size_t>(q[0])].id, pts[static_cast<std::size_t>(q[1])].id,
                     pts[static_cast<std::size_t>(q[2])].id, pts[static_cast<std::size_t>(q[3])].id};
          std::sort(ev.quad.begin(), ev.quad.end());
          ev.time = r;
          ev.index = index;
          auto [lvl, inside] = level_of(pts, q, r);
          ev.level = lvl;
          ev.inside = std::move(inside);
          cocirc_parts[static_cast<std::size_t>(worker)].push_back(std::move(ev));
        }
      }
    } catch (const kdt_error& ex) {
      errors[static_cast<std::size_t>(worker)] = ex.what();
    }
  });
  for (auto& err : errors)
    if (!err.empty()) throw instance_degenerate(err);

  for (auto& part : cocirc_parts)
    for (auto& ev : part) census.cocircularities.push_back(std::move(ev));

  for (const auto& tr : triples) {
    const MovingPoint& a = pts[static_cast<std::size_t>(tr[0])];
    const MovingPoint& b = pts[static_cast<std::size_t>(tr[1])];
    const MovingPoint& c = pts[static_cast<std::size_t>(tr[2])];
    TimePoly f;
    try {
      f = collinearity_poly(a, b, c);
    } catch (const degenerate_motion& ex) {
      throw instance_degenerate(ex.what());
    }
    for (auto& r : isolate_roots(f, window_lo, window_hi)) {
      if (r.multiplicity() != 1)
        throw instance_degenerate("tangential collinearity (multiplicity > 1)");
      CollinEvent ev;
      ev.triple = {a.id, b.id, c.id};
      std::sort(ev.triple.begin(), ev.triple.end());
      ev.time = r;
      // the participant lying between the other two
      const MovingPoint* ps[3] = {&a, &b, &c};
      for (int m = 0; m < 3 && ev.mid < 0; ++m) {
        const MovingPoint& u = *ps[(m + 1) % 3];
        const MovingPoint& v = *ps[(m + 2) % 3];
        if (on_segment_at(u, v, *ps[m], r) == SegmentPosition::InsideSegment)
          ev.mid = ps[m]->id;
      }
      if (ev.mid < 0)
        throw instance_degenerate("collinearity without a middle point");
      int left = 0, right = 0;
      for (const auto& s : pts) {
        if (s.id == a.id || s.id == b.id || s.id == c.id) continue;
        int o = -r.sign_of(orient_det_poly(a, b, s));
        if (o > 0)
          ++right;
        else if (o < 0)
          ++left;
        else
          throw instance_degenerate("four points collinear at an event");
      }
      ev.shallowness = std::min(left, right);
      census.collinearities.push_back(std::move(ev));
    }
  }

  auto by_time = [](const auto& x, const auto& y) {
    int c = x.time.compare(y.time);
    if (c != 0) return c < 0;
    return false;
  };
  std::stable_sort(census.cocircularities.begin(), census.cocircularities.end(), by_time);
  std::stable_sort(census.collinearities.begin(), census.collinearities.end(), by_time);
  census.build_indices();
  return census;
}

// Full kinetic simulation on P minus the excluded ids; events carry original
// ids, so membership questions about DT(P \ A) read off directly.
inline EventLog reduced_replay(const std::vector<MovingPoint>& pts,
                               const std::vector<int>& excluded_ids, const Rat& window_lo,
                               const Rat& window_hi, const AdvanceOptions& opt = {}) {
  std::vector<MovingPoint> kept;
  for (const auto& p : pts) {
    bool out = false;
    for (int e : excluded_ids) out |= (p.id == e);
    if (!out) kept.push_back(p);
  }
  if (kept.size() < 3)
    throw precondition_violated("reduced_replay: fewer than 3 points remain");
  KineticTriangulation kt = build_initial(std::move(kept), window_lo);
  return advance(kt, window_hi, opt);
}

}  // namespace kdt
