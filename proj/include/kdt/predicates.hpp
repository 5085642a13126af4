#pragma once
#include <array>
#include <string>

#include "kdt/errors.hpp"
#include "kdt/moving_point.hpp"
#include "kdt/poly.hpp"
#include "kdt/roots.hpp"

namespace kdt {

namespace detail {

inline TimePoly x_poly(const MovingPoint& p) { return TimePoly({p.x0, p.ux}); }
inline TimePoly y_poly(const MovingPoint& p) { return TimePoly({p.y0, p.uy}); }

// Last determinant row after cancelling the common t^2 term that unit speed
// contributes to x(t)^2 + y(t)^2.
inline TimePoly lift_poly(const MovingPoint& p) {
  return TimePoly({p.x0 * p.x0 + p.y0 * p.y0, 2 * (p.x0 * p.ux + p.y0 * p.uy)});
}

inline TimePoly det3(const TimePoly& a0, const TimePoly& a1, const TimePoly& a2,
                     const TimePoly& b0, const TimePoly& b1, const TimePoly& b2,
                     const TimePoly& c0, const TimePoly& c1, const TimePoly& c2) {
  return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) +
         a2 * (b0 * c1 - b1 * c0);
}

}  // namespace detail

// Sign-preserving cross-product polynomial of (q - p) x (r - p): positive
// while r lies strictly to the left of the oriented line from p to q.
inline TimePoly orient_det_poly(const MovingPoint& p, const MovingPoint& q,
                                const MovingPoint& r) {
  using namespace detail;
  TimePoly f = (x_poly(q) - x_poly(p)) * (y_poly(r) - y_poly(p)) -
               (y_poly(q) - y_poly(p)) * (x_poly(r) - x_poly(p));
  f.normalize_signed();
  f.set_kind(PolyKind::Collinearity);
  return f;
}

// Sign-preserving co-circularity determinant D(t) of the quadruple, rows
// (1, x, y, x^2+y^2) with the t^2 terms cancelled row-wise; degree <= 3.
inline TimePoly cocircularity_det_poly(const MovingPoint& p1, const MovingPoint& p2,
                                       const MovingPoint& p3, const MovingPoint& p4) {
  using namespace detail;
  std::array<TimePoly, 4> X{x_poly(p1), x_poly(p2), x_poly(p3), x_poly(p4)};
  std::array<TimePoly, 4> Y{y_poly(p1), y_poly(p2), y_poly(p3), y_poly(p4)};
  std::array<TimePoly, 4> W{lift_poly(p1), lift_poly(p2), lift_poly(p3), lift_poly(p4)};
  TimePoly d;
  for (int i = 0; i < 4; ++i) {
    int j0 = (i == 0) ? 1 : 0;
    int j1 = (i <= 1) ? 2 : 1;
    int j2 = (i <= 2) ? 3 : 2;
    TimePoly minor = det3(X[j0], X[j1], X[j2], Y[j0], Y[j1], Y[j2], W[j0], W[j1], W[j2]);
    d = (i % 2 == 0) ? d + minor : d - minor;
  }
  d.normalize_signed();
  d.set_kind(PolyKind::Cocircularity);
  return d;
}

// Degree-<=3 polynomial whose real roots are exactly the co-circularity
// times of the four points.  Normalized to coprime integer coefficients with
// a positive leading coefficient.  Throws degenerate_motion when the
// quadruple is co-circular at all times.
inline TimePoly cocircularity_poly(const MovingPoint& p1, const MovingPoint& p2,
                                   const MovingPoint& p3, const MovingPoint& p4) {
  TimePoly d = cocircularity_det_poly(p1, p2, p3, p4);
  if (d.is_zero())
    throw degenerate_motion("cocircularity_poly: quadruple (" +
                            std::to_string(p1.id) + "," + std::to_string(p2.id) + "," +
                            std::to_string(p3.id) + "," + std::to_string(p4.id) +
                            ") is co-circular at all times");
  d.normalize();
  d.set_kind(PolyKind::Cocircularity);
  return d;
}

// Degree-<=2 polynomial whose real roots are the collinearity times of the
// three points.  Throws degenerate_motion when identically zero.
inline TimePoly collinearity_poly(const MovingPoint& p1, const MovingPoint& p2,
                                  const MovingPoint& p3) {
  TimePoly f = orient_det_poly(p1, p2, p3);
  if (f.is_zero())
    throw degenerate_motion("collinearity_poly: triple (" +
                            std::to_string(p1.id) + "," + std::to_string(p2.id) + "," +
                            std::to_string(p3.id) + ") is collinear at all times");
  f.normalize();
  f.set_kind(PolyKind::Collinearity);
  return f;
}

// Side of r relative to the oriented line from p to q at time t:
//   +1  r in the right halfplane L+,
//   -1  r in the left halfplane L-,
//    0  r on the line.
// The left halfplane is the paper-facing L-; this function is the single
// source of truth for that convention.
inline int orient_at(const MovingPoint& p, const MovingPoint& q,
                     const MovingPoint& r, const Rat& t) {
  Rat qx = q.x_at(t) - p.x_at(t), qy = q.y_at(t) - p.y_at(t);
  if (sign(qx) == 0 && sign(qy) == 0)
    throw coincident_points("orient_at: p and q coincide at t=" + rat_to_string(t));
  Rat crossv = qx * (r.y_at(t) - p.y_at(t)) - qy * (r.x_at(t) - p.x_at(t));
  return -sign(crossv);
}

// Same side predicate evaluated at an exact algebraic time.
inline int orient_at(const MovingPoint& p, const MovingPoint& q,
                     const MovingPoint& r, const IsolatedRoot& t) {
  return -t.sign_of(orient_det_poly(p, q, r));
}

// +1 if s lies strictly inside the circumdisc B[p,q,r] at time t, -1
// strictly outside, 0 on the circle.  Exact for rational t.
inline int incircle_at(const MovingPoint& p, const MovingPoint& q,
                       const MovingPoint& r, const MovingPoint& s, const Rat& t) {
  Rat ax = p.x_at(t) - s.x_at(t), ay = p.y_at(t) - s.y_at(t);
  Rat bx = q.x_at(t) - s.x_at(t), by = q.y_at(t) - s.y_at(t);
  Rat cx = r.x_at(t) - s.x_at(t), cy = r.y_at(t) - s.y_at(t);
  Rat az = ax * ax + ay * ay, bz = bx * bx + by * by, cz = cx * cx + cy * cy;
  Rat det = ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) +
            az * (bx * cy - by * cx);
  Rat ccw = (q.x_at(t) - p.x_at(t)) * (r.y_at(t) - p.y_at(t)) -
            (q.y_at(t) - p.y_at(t)) * (r.x_at(t) - p.x_at(t));
  if (sign(ccw) == 0)
    throw collinear_base("incircle_at: base points " + std::to_string(p.id) + "," +
                         std::to_string(q.id) + "," + std::to_string(r.id) +
                         " collinear at t=" + rat_to_string(t));
  return sign(det) * sign(ccw);
}

// incircle sign at an exact algebraic time.
inline int incircle_at(const MovingPoint& p, const MovingPoint& q,
                       const MovingPoint& r, const MovingPoint& s,
                       const IsolatedRoot& t) {
  int ccw = t.sign_of(orient_det_poly(p, q, r));
  if (ccw == 0)
    throw collinear_base("incircle_at: base points collinear at query time");
  // The 4x4 determinant with columns (p,q,r,s) equals minus the lifted 3x3
  // form used above.
  return -t.sign_of(cocircularity_det_poly(p, q, r, s)) * ccw;
}

enum class SegmentPosition { InsideSegment, OnRayBeyondP, OnRayBeyondQ, NotOnLine };

inline const char* to_string(SegmentPosition s) {
  switch (s) {
    case SegmentPosition::InsideSegment: return "InsideSegment";
    case SegmentPosition::OnRayBeyondP: return "OnRayBeyondP";
    case SegmentPosition::OnRayBeyondQ: return "OnRayBeyondQ";
    default: return "NotOnLine";
  }
}

// Position of r relative to the closed segment pq at time t.
inline SegmentPosition on_segment_at(const MovingPoint& p, const MovingPoint& q,
                                     const MovingPoint& r, const Rat& t) {
  Rat dx = q.x_at(t) - p.x_at(t), dy = q.y_at(t) - p.y_at(t);
  Rat rx = r.x_at(t) - p.x_at(t), ry = r.y_at(t) - p.y_at(t);
  if (sign(rx) == 0 && sign(ry) == 0)
    throw coincident_points("on_segment_at: r coincides with p at t=" + rat_to_string(t));
  if (rx == dx && ry == dy)
    throw coincident_points("on_segment_at: r coincides with q at t=" + rat_to_string(t));
  if (sign(dx) == 0 && sign(dy) == 0)
    throw coincident_points("on_segment_at: p and q coincide at t=" + rat_to_string(t));
  if (sign(dx * ry - dy * rx) != 0) return SegmentPosition::NotOnLine;
  Rat dot = dx * rx + dy * ry;
  if (sign(dot) < 0) return SegmentPosition::OnRayBeyondP;
  if (dot > dx * dx + dy * dy) return SegmentPosition::OnRayBeyondQ;
  return SegmentPosition::InsideSegment;
}

// Segment classification at an exact algebraic time; the caller asserts that
// p, q, r are collinear there (e.g. t is a collinearity root).
inline SegmentPosition on_segment_at(const MovingPoint& p, const MovingPoint& q,
                                     const MovingPoint& r, const IsolatedRoot& t) {
  using namespace detail;
  TimePoly dx = x_poly(q) - x_poly(p), dy = y_poly(q) - y_poly(p);
  TimePoly rx = x_poly(r) - x_poly(p), ry = y_poly(r) - y_poly(p);
  if (t.sign_of(dx * ry - dy * rx) != 0) return SegmentPosition::NotOnLine;
  TimePoly dot = dx * rx + dy * ry;
  int s = t.sign_of(dot);
  if (s < 0) return SegmentPosition::OnRayBeyondP;
  if (s == 0)
    throw coincident_points("on_segment_at: r coincides with p at query time");
  int u = t.sign_of(dot - (dx * dx + dy * dy));
  if (u > 0) return SegmentPosition::OnRayBeyondQ;
  if (u == 0)
    throw coincident_points("on_segment_at: r coincides with q at query time");
  return SegmentPosition::InsideSegment;
}

}  // namespace kdt
