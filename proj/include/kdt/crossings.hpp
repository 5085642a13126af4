#pragma once
#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "kdt/kinetic.hpp"
#include "kdt/redblue.hpp"

namespace kdt {

// A Delaunay crossing (pq, r, I): pq absent from DT(P) on the open interval,
// r crosses the segment pq inside it, and pq stays in DT(P \ {r}) throughout.
// Oriented so that the first hit goes from the left halfplane L- to L+.
struct CrossingRecord {
  int p = -1, q = -1, r = -1;         // ids
  IsolatedRoot t0, t1;                // absence interval of pq
  std::vector<IsolatedRoot> hits;     // segment-crossing times, 1 or 2
  bool double_crossing = false;
};

struct CrossingCensus {
  std::vector<CrossingRecord> crossings;
  int degenerate_count = 0;   // r hits pq exactly at t0 or t1
  int unclosed_absences = 0;  // absences still open at the window end
  Rat window_lo, window_hi;
};

// Maximal absence intervals of finite edges, read off the event log.
struct AbsenceInterval {
  int u, v;  // ids, u < v
  IsolatedRoot from, to;
};

inline std::vector<AbsenceInterval> absence_intervals(const EventLog& log,
                                                      int* unclosed = nullptr) {
  std::vector<AbsenceInterval> out;
  std::map<std::pair<int, int>, IsolatedRoot> open;
  for (const auto& e : log.events) {
    if (e.removed_edge) {
      auto key = std::minmax(e.removed_edge->first, e.removed_edge->second);
      open.emplace(std::pair<int, int>(key.first, key.second), e.time);
    }
    if (e.added_edge) {
      auto key = std::minmax(e.added_edge->first, e.added_edge->second);
      auto it = open.find({key.first, key.second});
      if (it != open.end()) {
        out.push_back(AbsenceInterval{key.first, key.second, it->second, e.time});
        open.erase(it);
      }
    }
  }
  if (unclosed) *unclosed = static_cast<int>(open.size());
  return out;
}

// Detect every Delaunay crossing of the instance inside the window by
// certified simulation plus reduced-envelope verification.
inline CrossingCensus detect_crossings(const std::vector<MovingPoint>& pts,
                                       const Rat& window_lo, const Rat& window_hi,
                                       const EventLog* precomputed_log = nullptr) {
  CrossingCensus out;
  out.window_lo = window_lo;
  out.window_hi = window_hi;

  EventLog local;
  if (!precomputed_log) {
    KineticTriangulation kt = build_initial(pts, window_lo);
    local = advance(kt, window_hi);
  }
  const EventLog& log = precomputed_log ? *precomputed_log : local;

  std::vector<std::size_t> index_of(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    index_of[static_cast<std::size_t>(pts[i].id)] = i;

  auto intervals = absence_intervals(log, &out.unclosed_absences);
  for (const auto& iv : intervals) {
    std::size_t u = index_of[static_cast<std::size_t>(iv.u)];
    std::size_t v = index_of[static_cast<std::size_t>(iv.v)];
    for (std::size_t r = 0; r < pts.size(); ++r) {
      if (r == u || r == v) continue;
      TimePoly f = orient_det_poly(pts[u], pts[v], pts[r]);
      if (f.is_zero()) throw instance_degenerate("triple collinear at all times");
      Rat scan_lo = iv.from.is_rational() ? iv.from.rational_value() : iv.from.lo();
      Rat scan_hi = iv.to.is_rational() ? iv.to.rational_value() : iv.to.hi();
      std::vector<IsolatedRoot> hits;
      bool degenerate = false;
      for (auto& root : isolate_roots(f, scan_lo, scan_hi)) {
        int c0 = root.compare(iv.from), c1 = root.compare(iv.to);
        if (c0 < 0 || c1 > 0) continue;
        if (on_segment_at(pts[u], pts[v], pts[r], root) !=
            SegmentPosition::InsideSegment)
          continue;
        if (c0 == 0 || c1 == 0) {
          degenerate = true;
          continue;
        }
        hits.push_back(root);
      }
      if (degenerate) ++out.degenerate_count;
      if (hits.empty()) continue;

      // condition 3: pq in DT(P \ {r}) throughout the closed interval
      std::vector<MovingPoint> reduced;
      for (std::size_t s = 0; s < pts.size(); ++s)
        if (s != r) reduced.push_back(pts[s]);
      std::size_t pu = 0, pv = 0;
      for (std::size_t s = 0; s < reduced.size(); ++s) {
        if (reduced[s].id == iv.u) pu = s;
        if (reduced[s].id == iv.v) pv = s;
      }
      if (!edge_delaunay_throughout(reduced, pu, pv, iv.from, iv.to)) continue;

      CrossingRecord rec;
      rec.t0 = iv.from;
      rec.t1 = iv.to;
      rec.hits = hits;
      rec.double_crossing = hits.size() == 2;
      rec.r = pts[r].id;
      // orient the edge so the first hit crosses L- -> L+ (orientation
      // polynomial positive = left; a simple down-crossing of F means the
      // point moves from L- into L+)
      int deriv = hits.front().sign_of(f.derivative());
      if (deriv < 0) {
        rec.p = pts[u].id;
        rec.q = pts[v].id;
      } else {
        rec.p = pts[v].id;
        rec.q = pts[u].id;
      }
      out.crossings.push_back(std::move(rec));
    }
  }
  std::sort(out.crossings.begin(), out.crossings.end(),
            [](const CrossingRecord& a, const CrossingRecord& b) {
              int c = a.t0.compare(b.t0);
              if (c != 0) return c < 0;
              if (a.p != b.p) return a.p < b.p;
              if (a.q != b.q) return a.q < b.q;
              return a.r < b.r;
            });
  return out;
}

}  // namespace kdt
