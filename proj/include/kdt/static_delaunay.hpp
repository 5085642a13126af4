#pragma once
#include <string>
#include <vector>

#include "kdt/errors.hpp"
#include "kdt/moving_point.hpp"
#include "kdt/predicates.hpp"
#include "kdt/triangulation.hpp"

namespace kdt {

// Incremental Delaunay construction over the exact positions of the moving
// points at a fixed rational time.  Any zero predicate sign encountered is a
// general-position violation and raises degenerate_at_start naming the
// offending tuple.
class StaticDelaunay {
 public:
  StaticDelaunay(const std::vector<MovingPoint>& pts, const Rat& t) : pts_(pts) {
    px_.reserve(pts.size());
    py_.reserve(pts.size());
    for (const auto& p : pts) {
      px_.push_back(p.x_at(t));
      py_.push_back(p.y_at(t));
    }
  }

  TriangleMesh build() {
    const int n = static_cast<int>(pts_.size());
    if (n < 3) throw degenerate_at_start("need at least 3 points");
    TriangleMesh m;
    int a = 0, b = 1, c = 2;
    int o = ccw(a, b, c);
    if (o == 0)
      throw degenerate_at_start(tuple_msg("collinear triple", {a, b, c}));
    if (o < 0) std::swap(b, c);
    int t0 = m.add_face(a, b, c);
    int t1 = m.add_face(b, a, kInfinite);
    int t2 = m.add_face(c, b, kInfinite);
    int t3 = m.add_face(a, c, kInfinite);
    m.face(t0).nbr = {t2, t3, t1};
    m.face(t1).nbr = {t3, t2, t0};
    m.face(t2).nbr = {t1, t3, t0};
    m.face(t3).nbr = {t2, t1, t0};
    for (int p = 3; p < n; ++p) insert(m, p);
    return m;
  }

 private:
  int ccw(int i, int j, int k) const {
    Rat cr = (px_[sz(j)] - px_[sz(i)]) * (py_[sz(k)] - py_[sz(i)]) -
             (py_[sz(j)] - py_[sz(i)]) * (px_[sz(k)] - px_[sz(i)]);
    return sign(cr);
  }

  // s against the circumdisc of the ccw triangle (i, j, k).
  int in_disc(int i, int j, int k, int s) const {
    Rat ax = px_[sz(i)] - px_[sz(s)], ay = py_[sz(i)] - py_[sz(s)];
    Rat bx = px_[sz(j)] - px_[sz(s)], by = py_[sz(j)] - py_[sz(s)];
    Rat cx = px_[sz(k)] - px_[sz(s)], cy = py_[sz(k)] - py_[sz(s)];
    Rat az = ax * ax + ay * ay, bz = bx * bx + by * by, cz = cx * cx + cy * cy;
    Rat det = ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) +
              az * (bx * cy - by * cx);
    return sign(det);
  }

  void insert(TriangleMesh& m, int p) {
    int host = -1;
    for (int f = 0; f < m.face_count() && host < 0; ++f) {
      const Triangle& t = m.face(f);
      if (t.infinite()) continue;
      int s0 = ccw(t.v[0], t.v[1], p);
      int s1 = ccw(t.v[1], t.v[2], p);
      int s2 = ccw(t.v[2], t.v[0], p);
      if (s0 > 0 && s1 > 0 && s2 > 0) host = f;
      if ((s0 == 0 && s1 >= 0 && s2 >= 0) || (s1 == 0 && s0 >= 0 && s2 >= 0) ||
          (s2 == 0 && s0 >= 0 && s1 >= 0))
        throw degenerate_at_start(
            tuple_msg("point on edge or vertex of triangle",
                      {pts_[sz(p)].id, t.v[0], t.v[1], t.v[2]}));
    }
    if (host < 0) {
      for (int f = 0; f < m.face_count() && host < 0; ++f) {
        const Triangle& t = m.face(f);
        if (!t.infinite()) continue;
        int k = t.index_of(kInfinite);
        int X = t.v[sz3((k + 1) % 3)], Y = t.v[sz3((k + 2) % 3)];
        if (ccw(X, Y, p) > 0) host = f;  // p strictly beyond hull edge Y->X
      }
    }
    if (host < 0)
      throw degenerate_at_start(
          tuple_msg("point lies on the hull boundary", {pts_[sz(p)].id}));
    split(m, host, p);
  }

  void split(TriangleMesh& m, int f, int p) {
    Triangle old = m.face(f);
    int f0 = f;  // (v0, v1, p)
    int f1 = m.add_face(old.v[1], old.v[2], p);
    int f2 = m.add_face(old.v[2], old.v[0], p);
    m.face(f0) = Triangle{{old.v[0], old.v[1], p}, {f1, f2, old.nbr[2]}};
    m.face(f1).nbr = {f2, f0, old.nbr[0]};
    m.face(f2).nbr = {f0, f1, old.nbr[1]};
    if (old.nbr[0] != f) m.replace_nbr(old.nbr[0], f, f1);
    if (old.nbr[1] != f) m.replace_nbr(old.nbr[1], f, f2);
    // old.nbr[2] keeps pointing at f0 == f.
    legalize(m, f0, 2, p);
    legalize(m, f1, 2, p);
    legalize(m, f2, 2, p);
  }

  // The vertex at index i of face f is the freshly inserted p; test the edge
  // opposite it and flip if it is not locally Delaunay.
  void legalize(TriangleMesh& m, int f, int i, int p) {
    const Triangle& t = m.face(f);
    int A = t.v[sz3((i + 1) % 3)], B = t.v[sz3((i + 2) % 3)];
    int d = m.apex_across(f, i);
    bool illegal = false;
    if (A == kInfinite || B == kInfinite) {
      // Edge between two infinite faces; legality is hull convexity at the
      // shared finite vertex.
      int mvert = (A == kInfinite) ? B : A;
      int other = d;
      int prev, next;
      if (hull_edge_order(m, f, i, mvert, other, prev, next)) {
        int s = ccw(prev, mvert, next);
        if (s == 0)
          throw degenerate_at_start(
              tuple_msg("collinear hull triple", {prev, mvert, next}));
        illegal = s < 0;
      }
    } else if (d == kInfinite) {
      illegal = false;  // hull edges stay
    } else {
      int s = in_disc(A, B, p, d);
      if (s == 0)
        throw degenerate_at_start(tuple_msg("co-circular quadruple", {A, B, p, d}));
      illegal = s > 0;
    }
    if (!illegal) return;
    auto [g1, g2] = m.flip(f, i);
    legalize(m, g1, m.face(g1).index_of(p), p);
    legalize(m, g2, m.face(g2).index_of(p), p);
  }

  // For the infinite-infinite edge opposite f.v[i], produce the hull triple
  // (prev, mvert, next) in counterclockwise hull order.  Returns false when
  // the apexes are not finite (cannot happen in a well-formed mesh).
  bool hull_edge_order(const TriangleMesh& m, int f, int i, int mvert, int other,
                       int& prev, int& next) const {
    // f is infinite with apex p = f.v[i] finite; canonical reading of f tells
    // whether its apex precedes or follows mvert on the hull.
    const Triangle& t = m.face(f);
    int k = t.index_of(kInfinite);
    int X = t.v[sz3((k + 1) % 3)], Y = t.v[sz3((k + 2) % 3)];
    int apex = t.v[sz3(i)];
    // hull edge is Y -> X
    if (Y == apex && X == mvert) {
      prev = apex;
      next = other;
      return true;
    }
    if (X == apex && Y == mvert) {
      prev = other;
      next = apex;
      return true;
    }
    throw validation_failure("hull_edge_order: unexpected face layout");
  }

  static std::string tuple_msg(const std::string& what, std::vector<int> ids) {
    std::string s = what + " (";
    for (std::size_t i = 0; i < ids.size(); ++i)
      s += (i ? "," : "") + std::to_string(ids[i]);
    return s + ")";
  }
  static std::size_t sz(int i) { return static_cast<std::size_t>(i); }
  static std::size_t sz3(int i) { return static_cast<std::size_t>(i); }

  const std::vector<MovingPoint>& pts_;
  std::vector<Rat> px_, py_;
};

inline TriangleMesh build_delaunay(const std::vector<MovingPoint>& pts, const Rat& t) {
  return StaticDelaunay(pts, t).build();
}

// Full Delaunay validity of a mesh at time t: mutual adjacency, triangles
// positively oriented, hull edges supporting (no point strictly outside),
// and every finite circumdisc free of other points in its interior.
inline bool validate_mesh(const std::vector<MovingPoint>& pts, const TriangleMesh& m,
                          const Rat& t) {
  const int n = static_cast<int>(pts.size());
  if (!m.check_adjacency()) return false;
  std::vector<Rat> px(static_cast<std::size_t>(n)), py(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    px[static_cast<std::size_t>(i)] = pts[static_cast<std::size_t>(i)].x_at(t);
    py[static_cast<std::size_t>(i)] = pts[static_cast<std::size_t>(i)].y_at(t);
  }
  auto ccw = [&](int i, int j, int k) {
    Rat cr = (px[static_cast<std::size_t>(j)] - px[static_cast<std::size_t>(i)]) *
                 (py[static_cast<std::size_t>(k)] - py[static_cast<std::size_t>(i)]) -
             (py[static_cast<std::size_t>(j)] - py[static_cast<std::size_t>(i)]) *
                 (px[static_cast<std::size_t>(k)] - px[static_cast<std::size_t>(i)]);
    return sign(cr);
  };
  for (int f = 0; f < m.face_count(); ++f) {
    const Triangle& tr = m.face(f);
    if (tr.infinite()) {
      int k = tr.index_of(kInfinite);
      int X = tr.v[static_cast<std::size_t>((k + 1) % 3)];
      int Y = tr.v[static_cast<std::size_t>((k + 2) % 3)];
      for (int w = 0; w < n; ++w) {
        if (w == X || w == Y) continue;
        if (ccw(Y, X, w) < 0) return false;  // w strictly outside hull edge
      }
    } else {
      if (ccw(tr.v[0], tr.v[1], tr.v[2]) <= 0) return false;
      for (int w = 0; w < n; ++w) {
        if (tr.has_vertex(w)) continue;
        if (incircle_at(pts[static_cast<std::size_t>(tr.v[0])],
                        pts[static_cast<std::size_t>(tr.v[1])],
                        pts[static_cast<std::size_t>(tr.v[2])],
                        pts[static_cast<std::size_t>(w)], t) > 0)
          return false;
      }
    }
  }
  return true;
}

}  // namespace kdt
