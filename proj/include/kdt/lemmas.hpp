#pragma once
#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kdt/classify.hpp"
#include "kdt/crossings.hpp"
#include "kdt/oracle.hpp"
#include "kdt/redblue.hpp"

namespace kdt {

struct LemmaReport {
  int crossings_checked = 0;
  int crossing_edge_violations = 0;   // pr or rq leaves DT(P) inside I
  int oncecollin_violations = 0;      // some s defines no red-blue co-circularity
  int order_violations = 0;           // start/end/hit orders disagree
  int mustcross_checked = 0;
  int mustcross_violations = 0;       // none of the three exits happened
  int twicecollin_violations = 0;     // a pair repeats a two-crossing triple type
  std::vector<std::string> violations;

  bool ok() const {
    return crossing_edge_violations == 0 && oncecollin_violations == 0 &&
           order_violations == 0 && mustcross_violations == 0 &&
           twicecollin_violations == 0;
  }
};

namespace detail {

inline std::vector<std::size_t> id_index(const std::vector<MovingPoint>& pts) {
  std::size_t maxid = 0;
  for (auto& p : pts) maxid = std::max(maxid, static_cast<std::size_t>(p.id));
  std::vector<std::size_t> index_of(maxid + 1);
  for (std::size_t i = 0; i < pts.size(); ++i)
    index_of[static_cast<std::size_t>(pts[i].id)] = i;
  return index_of;
}

// An edge belongs to DT(P) at every census event time inside [t0, t1] and at
// a rational sample between consecutive ones (weak membership at the event
// moments themselves).
inline bool edge_in_dt_throughout_sampled(const std::vector<MovingPoint>& pts,
                                          std::size_t a, std::size_t b,
                                          const GlobalEventCensus& census,
                                          const IsolatedRoot& t0, const IsolatedRoot& t1) {
  std::vector<const IsolatedRoot*> fence;
  fence.push_back(&t0);
  for (auto& e : census.cocircularities)
    if (e.time.compare(t0) > 0 && e.time.compare(t1) < 0) fence.push_back(&e.time);
  for (auto& e : census.collinearities)
    if (e.time.compare(t0) > 0 && e.time.compare(t1) < 0) fence.push_back(&e.time);
  fence.push_back(&t1);
  std::sort(fence.begin(), fence.end(),
            [](const IsolatedRoot* x, const IsolatedRoot* y) { return x->compare(*y) < 0; });
  for (auto* t : fence)
    if (!edge_delaunay_at(pts, a, b, *t, false)) return false;
  for (std::size_t i = 0; i + 1 < fence.size(); ++i) {
    if (fence[i]->compare(*fence[i + 1]) >= 0) continue;
    Rat s = rational_between(*fence[i], *fence[i + 1]);
    if (!edge_delaunay_at(pts, a, b, s, false)) return false;
  }
  return true;
}

}  // namespace detail

// Check Lemmas "Crossing", "OnceCollin", "OrderOrdinaryCrossings", the
// MustCross exit trichotomy, and the TwiceCollin pair census against a
// detected crossing set.
inline LemmaReport verify_crossing_lemmas(const std::vector<MovingPoint>& pts,
                                          const CrossingCensus& crossings,
                                          const GlobalEventCensus& census,
                                          const EventLog& log) {
  LemmaReport rep;
  auto index_of = detail::id_index(pts);
  auto idx = [&](int id) { return index_of[static_cast<std::size_t>(id)]; };

  // Lemma "Crossing": pr and rq stay in DT(P) throughout I.
  for (const auto& c : crossings.crossings) {
    ++rep.crossings_checked;
    for (auto [a, b] : {std::pair<int, int>{c.p, c.r}, std::pair<int, int>{c.r, c.q}}) {
      if (!detail::edge_in_dt_throughout_sampled(pts, idx(a), idx(b), census, c.t0, c.t1)) {
        ++rep.crossing_edge_violations;
        std::ostringstream os;
        os << "Crossing: edge (" << a << "," << b << ") leaves DT during crossing ("
           << c.p << "," << c.q << ") by " << c.r;
        rep.violations.push_back(os.str());
      }
    }
  }

  // Lemma "OnceCollin": during a single crossing every other point takes
  // part in a co-circularity with p, q, r that is red-blue w.r.t. pq.
  for (const auto& c : crossings.crossings) {
    if (c.double_crossing) continue;
    for (const auto& s : pts) {
      if (s.id == c.p || s.id == c.q || s.id == c.r) continue;
      bool found = false;
      std::array<int, 4> quad{c.p, c.q, c.r, s.id};
      if (const auto* hits = census.cocirc_of(quad)) {
        for (std::size_t h : *hits) {
          const auto& ev = census.cocircularities[h];
          if (ev.time.compare(c.t0) < 0 || ev.time.compare(c.t1) > 0) continue;
          if (redblue_for_pair(pts, idx(c.p), idx(c.q), idx(c.r), idx(s.id), ev.time)) {
            found = true;
            break;
          }
        }
      }
      if (!found) {
        ++rep.oncecollin_violations;
        std::ostringstream os;
        os << "OnceCollin: no red-blue co-circularity of {" << c.p << "," << c.q << ","
           << c.r << "," << s.id << "} inside crossing interval";
        rep.violations.push_back(os.str());
      }
    }
  }

  // Lemma "OrderOrdinaryCrossings": within every clockwise (p, r) family and
  // counterclockwise (q, r) family, the orders by start, end and hit times
  // coincide.
  {
    std::map<std::pair<int, int>, std::vector<const CrossingRecord*>> cw, ccw;
    for (const auto& c : crossings.crossings) {
      if (c.double_crossing) continue;
      cw[{c.p, c.r}].push_back(&c);
      ccw[{c.q, c.r}].push_back(&c);
    }
    auto check_family = [&](std::vector<const CrossingRecord*>& fam, const char* label) {
      if (fam.size() < 2) return;
      auto by_start = fam, by_end = fam, by_hit = fam;
      std::sort(by_start.begin(), by_start.end(),
                [](auto* a, auto* b) { return a->t0.compare(b->t0) < 0; });
      std::sort(by_end.begin(), by_end.end(),
                [](auto* a, auto* b) { return a->t1.compare(b->t1) < 0; });
      std::sort(by_hit.begin(), by_hit.end(), [](auto* a, auto* b) {
        return a->hits.front().compare(b->hits.front()) < 0;
      });
      if (by_start != by_end || by_start != by_hit) {
        ++rep.order_violations;
        std::ostringstream os;
        os << "OrderOrdinaryCrossings: " << label << " family of ("
           << (label[0] == 'c' ? by_start.front()->p : by_start.front()->q) << ","
           << by_start.front()->r << ") has inconsistent orders";
        rep.violations.push_back(os.str());
      }
    };
    for (auto& [key, fam] : cw) check_family(fam, "clockwise");
    for (auto& [key, fam] : ccw) check_family(fam, "counterclockwise");
  }

  // MustCross: whenever a flip removes pq (violated by a, b) and pq rejoins
  // DT(P) later, one of the three exits happens in the interim.
  {
    auto intervals = absence_intervals(log);
    for (const auto& e : log.events) {
      if (e.kind != EventKind::Cocircularity || !e.removed_edge || !e.added_edge)
        continue;
      const AbsenceInterval* iv = nullptr;
      auto key = std::minmax(e.removed_edge->first, e.removed_edge->second);
      for (const auto& cand : intervals)
        if (cand.u == key.first && cand.v == key.second &&
            cand.from.compare(e.time) == 0) {
          iv = &cand;
          break;
        }
      if (!iv) continue;  // pq never rejoins inside the window
      ++rep.mustcross_checked;
      std::size_t p = idx(e.removed_edge->first), q = idx(e.removed_edge->second);
      std::size_t a = idx(e.added_edge->first), b = idx(e.added_edge->second);
      // relabel so a is the violator in L-, b in L+, sampling the sides just
      // after the flip and before either can reach the line of pq again
      TimePoly fa = orient_det_poly(pts[p], pts[q], pts[a]);
      TimePoly fb = orient_det_poly(pts[p], pts[q], pts[b]);
      IsolatedRoot side_cap = iv->to;
      Rat cap_hi = iv->to.is_rational() ? iv->to.rational_value() : iv->to.hi();
      Rat cap_lo = e.time.is_rational() ? e.time.rational_value() : e.time.lo();
      for (const TimePoly& f : {fa, fb})
        for (auto& root : isolate_roots(f, cap_lo, cap_hi))
          if (root.compare(e.time) > 0 && root.compare(side_cap) < 0) side_cap = root;
      Rat sample = rational_between(e.time, side_cap);
      int side_a = orient_at(pts[p], pts[q], pts[a], sample);
      if (side_a > 0) std::swap(a, b);  // want a on the left (L-)

      bool exit1 = false, exit2 = false, exit3 = false;
      auto crossing_exit = [&](std::size_t w, int want_deriv_sign) {
        TimePoly f = orient_det_poly(pts[p], pts[q], pts[w]);
        for (auto& root : isolate_roots(f, cap_lo, cap_hi)) {
          if (root.compare(e.time) <= 0 || root.compare(iv->to) > 0) continue;
          if (on_segment_at(pts[p], pts[q], pts[w], root) !=
              SegmentPosition::InsideSegment)
            continue;
          if (root.sign_of(f.derivative()) == want_deriv_sign) return true;
        }
        return false;
      };
      // a crosses pq from L- to L+: orientation polynomial falls through 0
      exit1 = crossing_exit(a, -1);
      // b crosses pq from L+ to L-
      exit2 = crossing_exit(b, +1);
      std::array<int, 4> quad{pts[p].id, pts[q].id, pts[a].id, pts[b].id};
      if (const auto* hits = census.cocirc_of(quad)) {
        for (std::size_t h : *hits) {
          const auto& ev = census.cocircularities[h];
          if (ev.time.compare(e.time) <= 0 || ev.time.compare(iv->to) > 0) continue;
          if (redblue_for_pair(pts, p, q, a, b, ev.time)) exit3 = true;
        }
      }
      if (!(exit1 || exit2 || exit3)) {
        ++rep.mustcross_violations;
        std::ostringstream os;
        os << "MustCross: edge (" << pts[p].id << "," << pts[q].id
           << ") rejoins with no exit event; violators " << pts[a].id << "," << pts[b].id;
        rep.violations.push_back(os.str());
      }
    }
  }

  // TwiceCollin census: per ordered pair and type, at most one completing
  // point yields two single crossings.
  {
    auto has = [&](int p, int q, int r) {
      for (const auto& c : crossings.crossings)
        if (!c.double_crossing && c.p == p && c.q == q && c.r == r) return true;
      return false;
    };
    std::map<std::pair<int, int>, std::array<std::vector<int>, 3>> families;
    for (const auto& c : crossings.crossings) {
      if (c.double_crossing) continue;
      // (i) (pq, r) and (qp, r)
      if (c.p < c.q && has(c.q, c.p, c.r)) families[{c.p, c.q}][0].push_back(c.r);
      // (ii) (pq, r) and (rq, p)
      if (has(c.r, c.q, c.p)) families[{c.p, c.q}][1].push_back(c.r);
      // (iii) (pq, r) and (pr, q)
      if (has(c.p, c.r, c.q)) families[{c.p, c.q}][2].push_back(c.r);
    }
    for (auto& [pq, types] : families)
      for (int ty = 0; ty < 3; ++ty) {
        auto& rs = types[static_cast<std::size_t>(ty)];
        std::sort(rs.begin(), rs.end());
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        if (rs.size() > 1) {
          ++rep.twicecollin_violations;
          std::ostringstream os;
          os << "TwiceCollin: pair (" << pq.first << "," << pq.second << ") type "
             << (ty + 1) << " repeated by " << rs.size() << " points";
          rep.violations.push_back(os.str());
        }
      }
  }

  return rep;
}

struct DoubleReport {
  int double_count = 0;
  int pairs_checked = 0;
  int violations = 0;
  std::vector<std::string> details;
  bool ok() const { return violations == 0; }
};

namespace detail {

inline MovingPoint reflect_x(const MovingPoint& p) {
  return MovingPoint(p.id, -p.x0, p.y0, -p.ux, p.uy);
}

// Theorem properties for two double crossings of outgoing p-edges by r,
// ordered by first hit: (i) a right of pq at both hits of pq, (ii) q left of
// pa at both hits of pa, (iii)+(iv) two co-circularities of {p,q,a,r},
// red-blue w.r.t. pq with r left and a right, one before J and one after J,
// and J strictly nested in I.
inline void check_double_pair(const std::vector<MovingPoint>& pts,
                              const CrossingRecord& first, const CrossingRecord& second,
                              DoubleReport& rep) {
  auto index_of = id_index(pts);
  auto idx = [&](int id) { return index_of[static_cast<std::size_t>(id)]; };
  std::size_t p = idx(first.p), q = idx(first.q), a = idx(second.q), r = idx(first.r);
  ++rep.pairs_checked;
  auto fail = [&](const std::string& what) {
    ++rep.violations;
    std::ostringstream os;
    os << "DoubleCrossing(" << first.p << "," << first.q << "/" << second.q << " by "
       << first.r << "): " << what;
    rep.details.push_back(os.str());
  };

  // (iv, tail) J strictly inside I
  if (!(first.t0.compare(second.t0) < 0 && second.t1.compare(first.t1) < 0))
    fail("interval of the later crossing is not nested in the earlier one");
  // (i) a in L+ of pq at both hits of pq
  for (auto& h : first.hits)
    if (orient_at(pts[p], pts[q], pts[a], h) <= 0) fail("(i): a not right of pq at a hit");
  // (ii) q in L- of pa at both hits of pa
  for (auto& h : second.hits)
    if (orient_at(pts[p], pts[a], pts[q], h) >= 0) fail("(ii): q not left of pa at a hit");
  // (iii)/(iv): the two co-circularities around J
  TimePoly d = cocircularity_det_poly(pts[p], pts[q], pts[a], pts[r]);
  if (d.is_zero()) {
    fail("degenerate quadruple");
    return;
  }
  Rat lo = first.t0.is_rational() ? first.t0.rational_value() : first.t0.lo();
  Rat hi = first.t1.is_rational() ? first.t1.rational_value() : first.t1.hi();
  bool before = false, after = false;
  for (auto& root : isolate_roots(d, lo, hi)) {
    if (root.compare(first.t0) < 0 || root.compare(first.t1) > 0) continue;
    int sr = orient_at(pts[p], pts[q], pts[r], root);
    int sa = orient_at(pts[p], pts[q], pts[a], root);
    if (!(sr < 0 && sa > 0)) continue;  // red-blue w.r.t. pq, r left, a right
    if (root.compare(second.t0) < 0) before = true;
    if (root.compare(second.t1) > 0) after = true;
  }
  if (!before) fail("(iv): no red-blue co-circularity before the nested interval");
  if (!after) fail("(iv): no red-blue co-circularity after the nested interval");
}

}  // namespace detail

// Verify the double-crossing structure theorem over every same-(p, r) pair
// of detected double crossings (outgoing edges directly, incoming via the
// mirrored instance), and report the census against n^2.
inline DoubleReport verify_double_crossings(const std::vector<MovingPoint>& pts,
                                            const CrossingCensus& crossings) {
  DoubleReport rep;
  std::vector<const CrossingRecord*> doubles;
  for (const auto& c : crossings.crossings)
    if (c.double_crossing) doubles.push_back(&c);
  rep.double_count = static_cast<int>(doubles.size());

  auto by_first_hit = [](const CrossingRecord* x, const CrossingRecord* y) {
    return x->hits.front().compare(y->hits.front()) < 0;
  };

  // outgoing: shared source p and crosser r
  std::map<std::pair<int, int>, std::vector<const CrossingRecord*>> outgoing, incoming;
  for (auto* c : doubles) {
    outgoing[{c->p, c->r}].push_back(c);
    incoming[{c->q, c->r}].push_back(c);
  }
  for (auto& [key, fam] : outgoing) {
    if (fam.size() < 2) continue;
    std::sort(fam.begin(), fam.end(), by_first_hit);
    for (std::size_t i = 0; i + 1 < fam.size(); ++i)
      for (std::size_t j = i + 1; j < fam.size(); ++j)
        detail::check_double_pair(pts, *fam[i], *fam[j], rep);
  }
  // incoming pairs reduce to outgoing ones in the mirrored instance, where
  // each (uq, r) crossing reads as (q'u', r) with the same times
  if (!incoming.empty()) {
    std::vector<MovingPoint> mirrored;
    for (const auto& p : pts) mirrored.push_back(detail::reflect_x(p));
    for (auto& [key, fam] : incoming) {
      if (fam.size() < 2) continue;
      std::vector<CrossingRecord> flipped;
      for (auto* c : fam) {
        CrossingRecord m = *c;
        std::swap(m.p, m.q);
        flipped.push_back(std::move(m));
      }
      std::vector<const CrossingRecord*> fam2;
      for (auto& m : flipped) fam2.push_back(&m);
      std::sort(fam2.begin(), fam2.end(), by_first_hit);
      for (std::size_t i = 0; i + 1 < fam2.size(); ++i)
        for (std::size_t j = i + 1; j < fam2.size(); ++j)
          detail::check_double_pair(mirrored, *fam2[i], *fam2[j], rep);
    }
  }
  return rep;
}

}  // namespace kdt
