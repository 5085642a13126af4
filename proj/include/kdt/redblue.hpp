#pragma once
#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kdt/errors.hpp"
#include "kdt/moving_point.hpp"
#include "kdt/predicates.hpp"
#include "kdt/roots.hpp"

namespace kdt {

// Machinery around the arrangement A_pq of the signed center-offset
// functions f_r^+/f_r^- of an oriented edge pq.  The offset used here is
// scaled by |pq(t)|, which preserves every comparison at a fixed time.

namespace rb {

// (c - midpoint(pq)) . n with n the right normal of pq, scaled by |pq|;
// positive toward the right halfplane L+.
// Defined whenever p, q, r are not collinear:
//   f = |a|^2 (a.b - |b|^2) / (2 cross(a, b)),  a = q - p, b = r - p.
inline std::optional<Rat> offset_at(const MovingPoint& p, const MovingPoint& q,
                                    const MovingPoint& r, const Rat& t) {
  Rat ax = q.x_at(t) - p.x_at(t), ay = q.y_at(t) - p.y_at(t);
  Rat bx = r.x_at(t) - p.x_at(t), by = r.y_at(t) - p.y_at(t);
  Rat cross = ax * by - ay * bx;
  if (sign(cross) == 0) return std::nullopt;
  Rat a2 = ax * ax + ay * ay;
  Rat ab = ax * bx + ay * by;
  Rat b2 = bx * bx + by * by;
  return a2 * (ab - b2) / (2 * cross);
}

}  // namespace rb

// Per-point sample of the arrangement at a rational time.
struct RBSample {
  int id;     // point id
  bool red;   // right of pq (L+)
  Rat value;  // scaled center offset of B[p,q,id]
};

// All defined function values at time t; points on the line are skipped and
// reported through `on_line` when given.
inline std::vector<RBSample> redblue_samples(const std::vector<MovingPoint>& pts,
                                             std::size_t p, std::size_t q, const Rat& t,
                                             std::vector<int>* on_line = nullptr) {
  std::vector<RBSample> out;
  for (std::size_t s = 0; s < pts.size(); ++s) {
    if (s == p || s == q) continue;
    int side = orient_at(pts[p], pts[q], pts[s], t);
    auto v = rb::offset_at(pts[p], pts[q], pts[s], t);
    if (side == 0 || !v) {
      if (on_line) on_line->push_back(pts[s].id);
      continue;
    }
    out.push_back(RBSample{pts[s].id, side > 0, *v});
  }
  return out;
}

// Envelope route: pq is (strictly) Delaunay at t iff the blue upper envelope
// lies below the red lower envelope.
inline bool edge_delaunay_envelope_at(const std::vector<MovingPoint>& pts, std::size_t p,
                                      std::size_t q, const Rat& t, bool strict = true) {
  std::vector<int> on_line;
  auto samples = redblue_samples(pts, p, q, t, &on_line);
  for (int id : on_line) {
    for (const auto& s : pts)
      if (s.id == id &&
          on_segment_at(pts[p], pts[q], s, t) == SegmentPosition::InsideSegment)
        return false;  // a point inside the segment blocks every disc
  }
  bool has_red = false, has_blue = false;
  Rat eplus, eminus;
  for (auto& s : samples) {
    if (s.red) {
      if (!has_red || s.value < eplus) eplus = s.value;
      has_red = true;
    } else {
      if (!has_blue || s.value > eminus) eminus = s.value;
      has_blue = true;
    }
  }
  if (!has_red || !has_blue) return true;
  return strict ? eminus < eplus : eminus <= eplus;
}

// Witness-disc route, usable at algebraic times: tournament over incircle
// signs to find the extreme red and blue discs, then a final containment
// test.  Independent of the envelope evaluation above.
inline bool edge_delaunay_at(const std::vector<MovingPoint>& pts, std::size_t p,
                             std::size_t q, const IsolatedRoot& t, bool strict = true) {
  std::optional<std::size_t> best_red, best_blue;
  for (std::size_t s = 0; s < pts.size(); ++s) {
    if (s == p || s == q) continue;
    int side = orient_at(pts[p], pts[q], pts[s], t);
    if (side == 0) {
      if (on_segment_at(pts[p], pts[q], pts[s], t) == SegmentPosition::InsideSegment)
        return false;
      continue;  // on the line outside the segment: blocks nothing
    }
    if (side > 0) {
      if (!best_red || incircle_at(pts[p], pts[q], pts[*best_red], pts[s], t) > 0)
        best_red = s;
    } else {
      if (!best_blue || incircle_at(pts[p], pts[q], pts[*best_blue], pts[s], t) > 0)
        best_blue = s;
    }
  }
  if (!best_red || !best_blue) return true;
  int c = incircle_at(pts[p], pts[q], pts[*best_red], pts[*best_blue], t);
  return strict ? c < 0 : c <= 0;
}

inline bool edge_delaunay_at(const std::vector<MovingPoint>& pts, std::size_t p,
                             std::size_t q, const Rat& t, bool strict = true) {
  return edge_delaunay_at(pts, p, q, IsolatedRoot::from_rational(t), strict);
}

// Critical times of the arrangement of pq inside an open interval: every
// collinearity of (p, q, s) and every co-circularity of (p, q, s1, s2).
struct EdgeCriticalTimes {
  std::vector<IsolatedRoot> times;  // sorted
  std::vector<char> inside_segment; // per time: some point crosses within pq
};

inline EdgeCriticalTimes edge_critical_times(const std::vector<MovingPoint>& pts,
                                             std::size_t p, std::size_t q,
                                             const IsolatedRoot& lo, const IsolatedRoot& hi) {
  EdgeCriticalTimes out;
  Rat wlo = lo.is_rational() ? lo.rational_value() : lo.lo();
  Rat whi = hi.is_rational() ? hi.rational_value() : hi.hi();
  std::vector<std::pair<IsolatedRoot, char>> acc;
  for (std::size_t s = 0; s < pts.size(); ++s) {
    if (s == p || s == q) continue;
    TimePoly f = orient_det_poly(pts[p], pts[q], pts[s]);
    if (f.is_zero()) throw instance_degenerate("triple collinear at all times");
    for (auto& r : isolate_roots(f, wlo, whi)) {
      if (r.compare(lo) <= 0 || r.compare(hi) >= 0) continue;
      bool within = on_segment_at(pts[p], pts[q], pts[s], r) ==
                    SegmentPosition::InsideSegment;
      acc.emplace_back(r, within ? 1 : 0);
    }
  }
  for (std::size_t a = 0; a < pts.size(); ++a) {
    if (a == p || a == q) continue;
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if (b == p || b == q) continue;
      TimePoly d = cocircularity_det_poly(pts[p], pts[q], pts[a], pts[b]);
      if (d.is_zero()) throw instance_degenerate("quadruple co-circular at all times");
      for (auto& r : isolate_roots(d, wlo, whi)) {
        if (r.compare(lo) <= 0 || r.compare(hi) >= 0) continue;
        acc.emplace_back(r, 0);
      }
    }
  }
  std::sort(acc.begin(), acc.end(),
            [](const auto& x, const auto& y) { return x.first.compare(y.first) < 0; });
  for (auto& [r, w] : acc) {
    out.times.push_back(r);
    out.inside_segment.push_back(w);
  }
  return out;
}

// Exact decision of "pq belongs to DT(pts) throughout the closed interval":
// strict envelope separation on every gap between consecutive critical
// times, and no point crossing within the segment pq.
inline bool edge_delaunay_throughout(const std::vector<MovingPoint>& pts, std::size_t p,
                                     std::size_t q, const IsolatedRoot& t0,
                                     const IsolatedRoot& t1) {
  auto crit = edge_critical_times(pts, p, q, t0, t1);
  for (std::size_t i = 0; i < crit.times.size(); ++i)
    if (crit.inside_segment[i]) return false;
  std::vector<const IsolatedRoot*> fence;
  fence.push_back(&t0);
  for (auto& r : crit.times) fence.push_back(&r);
  fence.push_back(&t1);
  for (std::size_t i = 0; i + 1 < fence.size(); ++i) {
    Rat sample = rational_between(*fence[i], *fence[i + 1]);
    if (!edge_delaunay_at(pts, p, q, sample, true)) return false;
  }
  return true;
}

// The explicit arrangement: breakpoints, envelope pieces and labelled
// vertices of A_pq over a window.
struct RBVertex {
  IsolatedRoot time;
  int a, b;        // the two points whose functions intersect (ids)
  int colors;      // 0 red-red, 1 blue-blue, 2 red-blue (w.r.t. pq)
};

struct RBPiece {
  Rat sample;  // rational time inside the piece
  int id;      // attaining point id, or -1 when the side is empty
};

struct RedBlueArrangement {
  int p, q;  // ids
  Rat window_lo, window_hi;
  std::vector<IsolatedRoot> breakpoints;           // critical times, sorted
  std::vector<std::pair<IsolatedRoot, int>> discontinuities;  // collinearity, point id
  std::vector<RBVertex> vertices;                  // co-circularities labelled
  std::vector<RBPiece> upper_envelope;             // E+ per gap
  std::vector<RBPiece> lower_envelope;             // E- per gap
  std::vector<char> delaunay_per_gap;              // E- < E+ on the gap
};

// Construct A_pq over [lo, hi].  Requires p != q throughout the window.
inline RedBlueArrangement build_redblue(const std::vector<MovingPoint>& pts, std::size_t p,
                                        std::size_t q, const Rat& lo, const Rat& hi) {
  {
    Rat dx0 = pts[p].x0 - pts[q].x0, dy0 = pts[p].y0 - pts[q].y0;
    Rat dux = pts[p].ux - pts[q].ux, duy = pts[p].uy - pts[q].uy;
    TimePoly dist2({dx0 * dx0 + dy0 * dy0, 2 * (dx0 * dux + dy0 * duy),
                    dux * dux + duy * duy});
    if (dist2.is_zero() ||
        (dist2.degree() >= 1 && !isolate_roots(dist2, lo, hi).empty()))
      throw coincident_points("build_redblue: p and q coincide inside the window");
  }
  RedBlueArrangement arr;
  arr.p = pts[p].id;
  arr.q = pts[q].id;
  arr.window_lo = lo;
  arr.window_hi = hi;

  IsolatedRoot rlo = IsolatedRoot::from_rational(lo), rhi = IsolatedRoot::from_rational(hi);
  for (std::size_t s = 0; s < pts.size(); ++s) {
    if (s == p || s == q) continue;
    TimePoly f = orient_det_poly(pts[p], pts[q], pts[s]);
    if (f.is_zero()) throw instance_degenerate("triple collinear at all times");
    for (auto& r : isolate_roots(f, lo, hi))
      arr.discontinuities.emplace_back(r, pts[s].id);
  }
  for (std::size_t a = 0; a < pts.size(); ++a) {
    if (a == p || a == q) continue;
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if (b == p || b == q) continue;
      TimePoly d = cocircularity_det_poly(pts[p], pts[q], pts[a], pts[b]);
      if (d.is_zero()) throw instance_degenerate("quadruple co-circular at all times");
      for (auto& r : isolate_roots(d, lo, hi)) {
        int sa = orient_at(pts[p], pts[q], pts[a], r);
        int sb = orient_at(pts[p], pts[q], pts[b], r);
        RBVertex v;
        v.time = r;
        v.a = pts[a].id;
        v.b = pts[b].id;
        v.colors = (sa > 0 && sb > 0) ? 0 : (sa < 0 && sb < 0) ? 1 : 2;
        arr.vertices.push_back(std::move(v));
      }
    }
  }
  for (auto& [r, id] : arr.discontinuities) arr.breakpoints.push_back(r);
  for (auto& v : arr.vertices) arr.breakpoints.push_back(v.time);
  std::sort(arr.breakpoints.begin(), arr.breakpoints.end(),
            [](const IsolatedRoot& x, const IsolatedRoot& y) { return x.compare(y) < 0; });
  std::sort(arr.vertices.begin(), arr.vertices.end(),
            [](const RBVertex& x, const RBVertex& y) { return x.time.compare(y.time) < 0; });

  std::vector<const IsolatedRoot*> fence;
  fence.push_back(&rlo);
  for (auto& r : arr.breakpoints) fence.push_back(&r);
  fence.push_back(&rhi);
  for (std::size_t i = 0; i + 1 < fence.size(); ++i) {
    if (fence[i]->compare(*fence[i + 1]) >= 0) continue;
    Rat sample = rational_between(*fence[i], *fence[i + 1]);
    auto samples = redblue_samples(pts, p, q, sample);
    RBPiece up{sample, -1}, down{sample, -1};
    bool has_red = false, has_blue = false;
    Rat eplus, eminus;
    for (auto& s : samples) {
      if (s.red) {
        if (!has_red || s.value < eplus) {
          eplus = s.value;
          up.id = s.id;
        }
        has_red = true;
      } else {
        if (!has_blue || s.value > eminus) {
          eminus = s.value;
          down.id = s.id;
        }
        has_blue = true;
      }
    }
    arr.upper_envelope.push_back(up);
    arr.lower_envelope.push_back(down);
    arr.delaunay_per_gap.push_back(!has_red || !has_blue || eminus < eplus ? 1 : 0);
  }
  return arr;
}

}  // namespace kdt
