#pragma once
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kdt/errors.hpp"
#include "kdt/moving_point.hpp"
#include "kdt/predicates.hpp"
#include "kdt/roots.hpp"
#include "kdt/static_delaunay.hpp"
#include "kdt/triangulation.hpp"

namespace kdt {

enum class EventKind { Cocircularity, HullEvent };
enum class CertKind { InCircle, HullEdge, HullTriple };
enum class TimePolicy { Certified, Fast };

// One processed structural change of DT(P).
struct SimEvent {
  IsolatedRoot time;
  EventKind kind = EventKind::Cocircularity;
  std::vector<int> participants;  // original point ids: 4 (flip) or 3 (hull)
  // finite edges entering/leaving the triangulation, by original id
  std::optional<std::pair<int, int>> removed_edge, added_edge;
  int moving = -1;                // hull events: the vertex crossing the segment
  bool leaves_interior = false;   // hull events: vertex becomes a hull vertex
  bool certified = true;
  // audit mode: full finite triangle sets around the event
  std::vector<std::array<int, 3>> tris_before, tris_after;
};

class EventLog {
 public:
  std::vector<SimEvent> events;
  std::size_t flip_count() const {
    std::size_t c = 0;
    for (auto& e : events) c += e.kind == EventKind::Cocircularity;
    return c;
  }
  std::size_t hull_count() const { return events.size() - flip_count(); }

  void write(std::ostream& os) const {
    for (const auto& e : events) {
      os << (e.kind == EventKind::Cocircularity ? "flip" : "hull");
      os << " t_lo=" << rat_to_string(e.time.lo()) << " t_hi=" << rat_to_string(e.time.hi());
      os << " t_est=" << e.time.float_estimate();
      os << (e.kind == EventKind::Cocircularity ? " quad=" : " triple=");
      for (std::size_t i = 0; i < e.participants.size(); ++i)
        os << (i ? "," : "") << e.participants[i];
      if (e.removed_edge)
        os << " removed=" << e.removed_edge->first << "," << e.removed_edge->second;
      if (e.added_edge)
        os << " added=" << e.added_edge->first << "," << e.added_edge->second;
      if (e.kind == EventKind::HullEvent)
        os << " moving=" << e.moving << " dir=" << (e.leaves_interior ? "out" : "in");
      os << " certified=" << (e.certified ? 1 : 0) << "\n";
    }
  }
};

// Local certificate attached to one edge of the augmented triangulation.
// The polynomial is positive exactly while the certificate holds:
//   InCircle   D(A,B,c,d) for finite faces (A,B,c), (B,A,d),
//   HullEdge   cross(A,B,c) for hull edge A->B with inner apex c,
//   HullTriple cross(a,m,b) for consecutive hull vertices a, m, b.
struct Certificate {
  CertKind kind = CertKind::InCircle;
  int u = -2, v = -2;           // edge endpoints (mesh indices; may be kInfinite)
  std::vector<int> participants;  // indices: 4 for InCircle, 3 for hull kinds
  TimePoly poly;
  std::optional<IsolatedRoot> failure;
  std::uint64_t version = 0;
};

struct KineticTriangulation {
  std::vector<MovingPoint> points;  // engine indexes by position; ids preserved
  TriangleMesh mesh;
  Rat now;

  int id_of(int index) const { return points[static_cast<std::size_t>(index)].id; }
};

struct AdvanceOptions {
  TimePolicy policy = TimePolicy::Certified;
  bool audit = false;             // record triangle sets around every event
  int validate_every = 0;         // certified mode: validate at a rational time
                                  // before every k-th event (0 = off)
  std::size_t max_events = 2000000;
};

// Static Delaunay construction at time t.  The points keep their own ids;
// engine-internal vertex numbers are positions in the vector.
inline KineticTriangulation build_initial(std::vector<MovingPoint> points, const Rat& t) {
  KineticTriangulation kt;
  kt.mesh = build_delaunay(points, t);
  kt.points = std::move(points);
  kt.now = t;
  return kt;
}

inline bool validate(const KineticTriangulation& kt, const Rat& t) {
  return validate_mesh(kt.points, kt.mesh, t);
}

namespace detail {

struct CertBuildResult {
  CertKind kind;
  TimePoly poly;
  std::vector<int> participants;
};

// Derive the certificate backing the edge anchored at (f, i).
inline CertBuildResult certificate_for_edge(const KineticTriangulation& kt, int f, int i) {
  const TriangleMesh& m = kt.mesh;
  int c = m.face(f).v[static_cast<std::size_t>(i)];
  if (c == kInfinite) {
    // re-anchor from the other side so the apex in hand is finite
    int g = m.face(f).nbr[static_cast<std::size_t>(i)];
    int j = m.mirror_index(f, i);
    f = g;
    i = j;
    c = m.face(f).v[static_cast<std::size_t>(i)];
  }
  auto [A, B] = m.edge_endpoints(f, i);
  int d = m.apex_across(f, i);
  const auto& P = kt.points;
  auto pt = [&](int idx) -> const MovingPoint& { return P[static_cast<std::size_t>(idx)]; };

  if (A != kInfinite && B != kInfinite && d != kInfinite) {
    return {CertKind::InCircle, cocircularity_det_poly(pt(A), pt(B), pt(c), pt(d)),
            {A, B, c, d}};
  }
  if (A != kInfinite && B != kInfinite) {
    // hull edge A->B with the infinite face across; apex c stays interior
    // while it keeps left of A->B
    return {CertKind::HullEdge, orient_det_poly(pt(A), pt(B), pt(c)), {A, c, B}};
  }
  // infinite-infinite edge: consecutive hull triple around the shared vertex
  int mvert = (A == kInfinite) ? B : A;
  const Triangle& t = m.face(f);
  int k = t.index_of(kInfinite);
  int X = t.v[static_cast<std::size_t>((k + 1) % 3)];
  int Y = t.v[static_cast<std::size_t>((k + 2) % 3)];
  int prev, next;
  if (X == c && Y == mvert) {  // hull edge mvert -> c, apex follows
    prev = d;
    next = c;
  } else if (Y == c && X == mvert) {  // hull edge c -> mvert, apex precedes
    prev = c;
    next = d;
  } else {
    throw validation_failure("certificate_for_edge: inconsistent infinite face");
  }
  return {CertKind::HullTriple, orient_det_poly(pt(prev), pt(mvert), pt(next)),
          {prev, mvert, next}};
}

// Earliest certified failure of a positive-while-valid certificate strictly
// after `now`, within (now, t_end].  An even-multiplicity root encountered
// first is a tangential event, which the model refuses.
inline std::optional<IsolatedRoot> first_failure(const TimePoly& poly,
                                                 const IsolatedRoot& now,
                                                 const Rat& t_end) {
  if (poly.is_zero()) throw instance_degenerate("degenerate motion in certificate");
  Rat win_lo = now.is_rational() ? now.rational_value() : now.lo();
  if (win_lo >= t_end) return std::nullopt;
  auto roots = isolate_roots(poly, win_lo, t_end);
  for (auto& r : roots) {
    if (r.compare(now) <= 0) continue;
    if (r.multiplicity() % 2 == 0)
      throw instance_degenerate("tangential (even multiplicity) certificate root");
    return r;
  }
  return std::nullopt;
}

// Double-precision counterpart used on the fast path.  The pivot is a
// rational chosen strictly after the last processed event (so roots owned by
// that event are excluded by construction), and every sign is sampled away
// from roots where double evaluation is well conditioned.  Anything
// ambiguous falls back to certified isolation from the same pivot.
inline std::optional<double> first_failure_fast(const TimePoly& poly,
                                                const Rat& pivot, const Rat& t_end) {
  if (poly.is_zero()) throw instance_degenerate("degenerate motion in certificate");
  double pivot_d = to_double(pivot), t_end_d = to_double(t_end);
  if (!(pivot_d < t_end_d)) return std::nullopt;
  auto escalate = [&]() -> std::optional<double> {
    auto r = first_failure(poly, IsolatedRoot::from_rational(pivot), t_end);
    if (!r) return std::nullopt;
    return r->float_estimate();
  };

  // scale-normalized double coefficients
  double maxc = 0;
  for (const auto& c : poly.coefficients()) maxc = std::max(maxc, std::abs(to_double(c)));
  if (maxc == 0 || !std::isfinite(maxc)) return escalate();
  std::vector<double> cs;
  for (const auto& c : poly.coefficients()) cs.push_back(to_double(c) / maxc);
  auto feval = [&](double t) {
    double acc = 0;
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * t + *it;
    return acc;
  };
  const double span = std::max({1.0, std::abs(pivot_d), std::abs(t_end_d)});
  const double tiny = 1e-11 * std::pow(span, static_cast<double>(std::max(1, poly.degree())));

  // monotone pieces between critical points
  std::vector<double> bp{pivot_d, t_end_d};
  if (cs.size() == 4) {
    double a = 3 * cs[3], b = 2 * cs[2], c0 = cs[1];
    double disc = b * b - 4 * a * c0;
    if (std::abs(disc) <= 1e-9 * (b * b + std::abs(4 * a * c0))) return escalate();
    if (disc > 0) {
      double sq = std::sqrt(disc);
      for (double r : {(-b - sq) / (2 * a), (-b + sq) / (2 * a)})
        if (r > pivot_d && r < t_end_d) bp.push_back(r);
    }
  } else if (cs.size() == 3) {
    double r = -cs[1] / (2 * cs[2]);
    if (r > pivot_d && r < t_end_d) bp.push_back(r);
  }
  std::sort(bp.begin(), bp.end());

  // all crossings in (pivot, t_end], ascending
  std::vector<double> roots;
  for (std::size_t s = 0; s + 1 < bp.size(); ++s) {
    double a = bp[s], b = bp[s + 1];
    if (!(a < b)) continue;
    double fa = feval(a), fb = feval(b);
    if (std::abs(fa) < tiny || std::abs(fb) < tiny) return escalate();
    if ((fa > 0) != (fb > 0)) {
      double x = a, y = b;
      bool rising = fa < 0;
      for (int it = 0; it < 70; ++it) {
        double mdl = (x + y) / 2, fm = feval(mdl);
        if ((fm < 0) == rising)
          x = mdl;
        else
          y = mdl;
      }
      roots.push_back((x + y) / 2);
    }
  }

  double probe = roots.empty() ? (pivot_d + t_end_d) / 2 : (pivot_d + roots.front()) / 2;
  double fp = feval(probe);
  if (std::abs(fp) < tiny) return escalate();
  if (fp < 0) {
    // Invalid just after the pivot (a failure slipped inside the pivot
    // guard, or ordering drift): flipping immediately is the Lawson repair
    // step and converges, so fail the certificate right away.
    return pivot_d;
  }
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

}  // namespace detail

// One certificate per edge of the augmented triangulation, failure times
// strictly after kt.now, capped at t_end.  For n == 3 the three consecutive
// hull triples share a single collinearity polynomial and are returned as
// the complete certificate set.
inline std::vector<Certificate> schedule(const KineticTriangulation& kt, const Rat& t_end) {
  std::vector<Certificate> certs;
  IsolatedRoot now = IsolatedRoot::from_rational(kt.now);
  try {
    if (kt.points.size() == 3) {
      auto hull = kt.mesh.hull_cycle();
      for (int s = 0; s < 3; ++s) {
        Certificate c;
        c.kind = CertKind::HullTriple;
        int a = hull[static_cast<std::size_t>(s)];
        int mvert = hull[static_cast<std::size_t>((s + 1) % 3)];
        int b = hull[static_cast<std::size_t>((s + 2) % 3)];
        c.participants = {a, mvert, b};
        c.u = mvert;
        c.v = kInfinite;
        c.poly = orient_det_poly(kt.points[static_cast<std::size_t>(a)],
                                 kt.points[static_cast<std::size_t>(mvert)],
                                 kt.points[static_cast<std::size_t>(b)]);
        c.failure = detail::first_failure(c.poly, now, t_end);
        certs.push_back(std::move(c));
      }
      return certs;
    }
    for (auto [f, i] : kt.mesh.edge_anchors()) {
      auto built = detail::certificate_for_edge(kt, f, i);
      Certificate c;
      c.kind = built.kind;
      auto [u, v] = kt.mesh.edge_endpoints(f, i);
      c.u = u;
      c.v = v;
      c.participants = std::move(built.participants);
      c.poly = std::move(built.poly);
      c.failure = detail::first_failure(c.poly, now, t_end);
      certs.push_back(std::move(c));
    }
  } catch (const degenerate_motion& e) {
    throw instance_degenerate(e.what());
  }
  std::sort(certs.begin(), certs.end(), [](const Certificate& a, const Certificate& b) {
    if (a.failure && b.failure) return a.failure->compare(*b.failure) < 0;
    return static_cast<bool>(a.failure) > static_cast<bool>(b.failure);
  });
  return certs;
}

namespace detail {

struct QueueEntry {
  IsolatedRoot time;
  double time_est;
  std::uint64_t key;
  std::uint64_t version;
};

// Process every structural event in (kt.now, t_end]; on return kt.now ==
// t_end and the mesh is the triangulation at that time.
inline EventLog advance_impl(KineticTriangulation& kt, const Rat& t_end,
                             const AdvanceOptions& opt) {
  EventLog log;
  const bool fast = opt.policy == TimePolicy::Fast;
  const std::size_t n = kt.points.size();
  auto orig = [&](int idx) { return kt.id_of(idx); };

  if (kt.now >= t_end) {
    kt.now = t_end;
    return log;
  }

  if (n == 3) {
    // Single triple: every hull certificate shares one polynomial; each odd
    // root is one hull event at which the triangle inverts.
    TimePoly f;
    try {
      f = orient_det_poly(kt.points[0], kt.points[1], kt.points[2]);
    } catch (const degenerate_motion& e) {
      throw instance_degenerate(e.what());
    }
    if (f.is_zero()) throw instance_degenerate("triple collinear at all times");
    for (auto& r : isolate_roots(f, kt.now, t_end)) {
      if (r.compare(IsolatedRoot::from_rational(kt.now)) <= 0) continue;
      if (r.multiplicity() % 2 == 0)
        throw instance_degenerate("tangential hull event (even multiplicity)");
      SimEvent e;
      e.time = r;
      e.kind = EventKind::HullEvent;
      int mid = -1;
      for (int m = 0; m < 3; ++m) {
        int a = (m + 1) % 3, b = (m + 2) % 3;
        if (on_segment_at(kt.points[static_cast<std::size_t>(a)],
                          kt.points[static_cast<std::size_t>(b)],
                          kt.points[static_cast<std::size_t>(m)],
                          r) == SegmentPosition::InsideSegment) {
          mid = m;
          break;
        }
      }
      if (mid < 0) throw validation_failure("n=3 collinearity without a middle point");
      e.participants = {orig((mid + 1) % 3), orig(mid), orig((mid + 2) % 3)};
      e.moving = orig(mid);
      e.leaves_interior = false;  // a 3-point hull loses no vertex; orientation flips
      e.certified = true;
      log.events.push_back(std::move(e));
    }
    kt.mesh = build_delaunay(kt.points, t_end);
    kt.now = t_end;
    return log;
  }

  // edge key -> live version, and edge key -> anchor (face, index)
  std::unordered_map<std::uint64_t, std::uint64_t> version;
  std::unordered_map<std::uint64_t, std::pair<int, int>> anchor;
  std::unordered_map<std::uint64_t, Certificate> live;

  auto heap_cmp = [](const QueueEntry& a, const QueueEntry& b) {
    if (a.time_est != b.time_est) return a.time_est > b.time_est;
    return a.key > b.key;
  };
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, decltype(heap_cmp)> queue(heap_cmp);

  IsolatedRoot now_exact = IsolatedRoot::from_rational(kt.now);
  // Fast mode schedules strictly after a rational pivot kept a small guard
  // past the last processed event; roots owned by that event fall behind the
  // pivot by construction.
  Rat pivot = kt.now;
  const double guard = 1e-10 * std::max(1.0, std::max(std::abs(to_double(kt.now)),
                                                      std::abs(to_double(t_end))));

  auto reschedule = [&](int f, int i) {
    auto [u, v] = kt.mesh.edge_endpoints(f, i);
    std::uint64_t key = edge_key(u, v);
    anchor[key] = {f, i};
    std::uint64_t ver = ++version[key];
    detail::CertBuildResult built;
    try {
      built = detail::certificate_for_edge(kt, f, i);
    } catch (const degenerate_motion& e) {
      throw instance_degenerate(e.what());
    }
    Certificate c;
    c.kind = built.kind;
    c.u = u;
    c.v = v;
    c.participants = std::move(built.participants);
    c.poly = std::move(built.poly);
    c.version = ver;
    if (fast) {
      auto fr = detail::first_failure_fast(c.poly, pivot, t_end);
      if (fr) {
        c.failure = IsolatedRoot::from_rational(rat_from_double(*fr));
        queue.push(QueueEntry{*c.failure, *fr, key, ver});
      }
    } else {
      c.failure = detail::first_failure(c.poly, now_exact, t_end);
      if (c.failure)
        queue.push(QueueEntry{*c.failure, c.failure->float_estimate(), key, ver});
    }
    live[key] = std::move(c);
  };

  for (auto [f, i] : kt.mesh.edge_anchors()) reschedule(f, i);

  // Pop entries whose version is still live.
  auto pop_valid = [&]() -> std::optional<QueueEntry> {
    while (!queue.empty()) {
      QueueEntry e = queue.top();
      queue.pop();
      auto it = version.find(e.key);
      if (it != version.end() && it->second == e.version) return e;
    }
    return std::nullopt;
  };

  std::size_t since_validate = 0;
  for (auto popped = pop_valid(); popped; popped = pop_valid()) {
    QueueEntry top = *popped;

    if (!fast) {
      // The heap orders by float estimates; certify the order exactly
      // against the runner-up, swapping when the estimates were too close to
      // discriminate, and reject exact ties outright.
      while (auto nxt = pop_valid()) {
        int c = top.time.compare(nxt->time);
        if (c == 0)
          throw tie_detected("two certificates fail at the same exact time");
        if (c > 0) {
          queue.push(top);
          top = *nxt;
          continue;
        }
        queue.push(*nxt);
        break;
      }
      if (opt.validate_every > 0 &&
          ++since_validate >= static_cast<std::size_t>(opt.validate_every)) {
        since_validate = 0;
        Rat probe = rational_between(now_exact, top.time);
        if (!validate_mesh(kt.points, kt.mesh, probe))
          throw validation_failure("triangulation invalid between events");
      }
    }

    if (log.events.size() >= opt.max_events)
      throw instance_degenerate("event budget exceeded");

    const Certificate cert = live[top.key];  // copy: the flip retires the entry
    auto anc = anchor[top.key];
    SimEvent ev;
    ev.time = top.time;
    ev.certified = !fast;
    if (opt.audit) ev.tris_before = kt.mesh.canonical_triangles();

    int f = anc.first, i = anc.second;
    {
      auto [eu, ev2] = kt.mesh.edge_endpoints(f, i);
      if (edge_key(eu, ev2) != top.key)
        throw validation_failure("anchor does not match certificate edge");
    }
    // make sure the anchored apex is on a definite side for the flip
    if (kt.mesh.face(f).v[static_cast<std::size_t>(i)] == kInfinite) {
      int g = kt.mesh.face(f).nbr[static_cast<std::size_t>(i)];
      i = kt.mesh.mirror_index(f, i);
      f = g;
    }

    if (cert.kind == CertKind::InCircle) {
      ev.kind = EventKind::Cocircularity;
      for (int pidx : cert.participants) ev.participants.push_back(orig(pidx));
      auto [ru, rv] = kt.mesh.edge_endpoints(f, i);
      int c = kt.mesh.face(f).v[static_cast<std::size_t>(i)];
      int d = kt.mesh.apex_across(f, i);
      ev.removed_edge = std::make_pair(orig(ru), orig(rv));
      ev.added_edge = std::make_pair(orig(c), orig(d));
    } else {
      ev.kind = EventKind::HullEvent;
      for (int pidx : cert.participants) ev.participants.push_back(orig(pidx));
      ev.moving = orig(cert.participants[1]);
      if (cert.kind == CertKind::HullEdge) {
        // apex crosses the hull edge outward; finite edge (u, v) disappears
        ev.leaves_interior = true;
        ev.removed_edge = std::make_pair(orig(cert.participants[0]),
                                         orig(cert.participants[2]));
      } else {
        // hull vertex moves inside; finite edge (prev, next) appears
        ev.leaves_interior = false;
        ev.added_edge = std::make_pair(orig(cert.participants[0]),
                                       orig(cert.participants[2]));
      }
    }

    auto [g1, g2] = kt.mesh.flip(f, i);
    anchor.erase(top.key);
    live.erase(top.key);
    ++version[top.key];  // invalidate the flipped-away edge

    if (fast) {
      Rat candidate = rat_from_double(top.time_est) + rat_from_double(guard);
      if (candidate > pivot) pivot = candidate;
    } else {
      now_exact = top.time;
    }

    for (int gface : {g1, g2})
      for (int k = 0; k < 3; ++k) reschedule(gface, k);

    if (opt.audit) ev.tris_after = kt.mesh.canonical_triangles();
    log.events.push_back(std::move(ev));
  }

  kt.now = t_end;
  return log;
}

}  // namespace detail

inline EventLog advance(KineticTriangulation& kt, const Rat& t_end,
                        const AdvanceOptions& opt = {}) {
  return detail::advance_impl(kt, t_end, opt);
}

}  // namespace kdt
