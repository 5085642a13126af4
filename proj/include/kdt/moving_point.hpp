#pragma once
#include <string>

#include "kdt/rational.hpp"

namespace kdt {

// A point moving along a straight line at unit speed.  Directions are exact
// rational unit vectors (Pythagorean parametrization), so ux^2 + uy^2 == 1
// holds as an identity and positions stay rational at rational times.
struct MovingPoint {
  int id = -1;
  Rat x0, y0;  // position at t = 0
  Rat ux, uy;  // direction, exact unit length

  MovingPoint() = default;
  MovingPoint(int id_, Rat x, Rat y, Rat dx, Rat dy)
      : id(id_), x0(std::move(x)), y0(std::move(y)), ux(std::move(dx)), uy(std::move(dy)) {
    if (ux * ux + uy * uy != 1)
      throw kdt_error("MovingPoint " + std::to_string(id_) +
                      ": direction is not an exact unit vector");
  }

  Rat x_at(const Rat& t) const { return x0 + ux * t; }
  Rat y_at(const Rat& t) const { return y0 + uy * t; }

  double x_at(double t) const { return to_double(x0) + to_double(ux) * t; }
  double y_at(double t) const { return to_double(y0) + to_double(uy) * t; }

  // Exact rational unit direction from the Pythagorean pair (m, k), m > k >= 1:
  // (m^2 - k^2, 2mk) / (m^2 + k^2).
  static void unit_direction(long m, long k, Rat& dx, Rat& dy) {
    Rat m2(m), k2(k);
    Rat den = m2 * m2 + k2 * k2;
    dx = (m2 * m2 - k2 * k2) / den;
    dy = (2 * m2 * k2) / den;
  }
};

}  // namespace kdt
