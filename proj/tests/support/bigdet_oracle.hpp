#pragma once
#include <boost/multiprecision/cpp_int.hpp>

#include "kdt/moving_point.hpp"

// Independent sign oracle for the geometric predicates: evaluates the
// defining determinants in boost cpp_rational, a different bignum stack from
// the GMP-backed kernel.
namespace kdt_test {

using BigQ = boost::multiprecision::cpp_rational;
using BigZ = boost::multiprecision::cpp_int;

inline BigQ bigq(const kdt::Rat& x) {
  return BigQ(BigZ(x.get_num().get_str()), BigZ(x.get_den().get_str()));
}

inline BigQ big_coord_x(const kdt::MovingPoint& p, const kdt::Rat& t) {
  return bigq(p.x0) + bigq(p.ux) * bigq(t);
}
inline BigQ big_coord_y(const kdt::MovingPoint& p, const kdt::Rat& t) {
  return bigq(p.y0) + bigq(p.uy) * bigq(t);
}

// Sign of the cross product (q-p) x (r-p); positive = r left of p->q.
inline int oracle_cross_sign(const kdt::MovingPoint& p, const kdt::MovingPoint& q,
                             const kdt::MovingPoint& r, const kdt::Rat& t) {
  BigQ v = (big_coord_x(q, t) - big_coord_x(p, t)) * (big_coord_y(r, t) - big_coord_y(p, t)) -
           (big_coord_y(q, t) - big_coord_y(p, t)) * (big_coord_x(r, t) - big_coord_x(p, t));
  return v.sign();
}

// +1 when s is strictly inside the circumdisc of p, q, r (any orientation).
inline int oracle_incircle_sign(const kdt::MovingPoint& p, const kdt::MovingPoint& q,
                                const kdt::MovingPoint& r, const kdt::MovingPoint& s,
                                const kdt::Rat& t) {
  BigQ ax = big_coord_x(p, t) - big_coord_x(s, t), ay = big_coord_y(p, t) - big_coord_y(s, t);
  BigQ bx = big_coord_x(q, t) - big_coord_x(s, t), by = big_coord_y(q, t) - big_coord_y(s, t);
  BigQ cx = big_coord_x(r, t) - big_coord_x(s, t), cy = big_coord_y(r, t) - big_coord_y(s, t);
  BigQ az = ax * ax + ay * ay, bz = bx * bx + by * by, cz = cx * cx + cy * cy;
  BigQ det = ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) + az * (bx * cy - by * cx);
  BigQ ccw = (big_coord_x(q, t) - big_coord_x(p, t)) * (big_coord_y(r, t) - big_coord_y(p, t)) -
             (big_coord_y(q, t) - big_coord_y(p, t)) * (big_coord_x(r, t) - big_coord_x(p, t));
  return det.sign() * ccw.sign();
}

}  // namespace kdt_test
