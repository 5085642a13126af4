#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "kdt/predicates.hpp"
#include "support/bigdet_oracle.hpp"
#include "support/test_points.hpp"

using kdt::MovingPoint;
using kdt::Rat;
using kdt::TimePoly;
using kdt_test::at;

namespace {

MovingPoint dir_pt(int id, long x, long y, long ux_num, long uy_num, long den) {
  return MovingPoint(id, Rat(x), Rat(y), Rat(ux_num, den), Rat(uy_num, den));
}

}  // namespace

TEST_CASE("unit speed is enforced on construction", "[predicates]") {
  REQUIRE_THROWS_AS(MovingPoint(0, Rat(0), Rat(0), Rat(1), Rat(1)), kdt::kdt_error);
  REQUIRE_NOTHROW(dir_pt(0, 0, 0, 3, 4, 5));
}

TEST_CASE("rigid translation of a co-circular quadruple is degenerate motion",
          "[predicates]") {
  // Four points on the unit circle, all moving in direction (1, 0).
  auto p1 = at(0, Rat(1), Rat(0));
  auto p2 = at(1, Rat(0), Rat(1));
  auto p3 = at(2, Rat(-1), Rat(0));
  auto p4 = at(3, Rat(0), Rat(-1));
  REQUIRE_THROWS_AS(kdt::cocircularity_poly(p1, p2, p3, p4), kdt::degenerate_motion);
}

TEST_CASE("hand-verified co-circularity at t = 0", "[predicates]") {
  // All four lie on the circle centered (1,0) with radius 1 at t = 0.
  auto p1 = at(0, Rat(0), Rat(0), Rat(1), Rat(0));
  auto p2 = at(1, Rat(2), Rat(0), Rat(-1), Rat(0));
  auto p3 = at(2, Rat(1), Rat(1), Rat(0), Rat(-1));
  auto p4 = at(3, Rat(1), Rat(-1), Rat(1), Rat(0));
  TimePoly d = kdt::cocircularity_poly(p1, p2, p3, p4);
  REQUIRE(d.degree() <= 3);
  REQUIRE(d.sign_at(Rat(0)) == 0);
  auto roots = kdt::isolate_roots(d, Rat(-1), Rat(1));
  bool has_zero = false;
  for (auto& r : roots)
    if (r.compare(kdt::IsolatedRoot::from_rational(Rat(0))) == 0) has_zero = true;
  REQUIRE(has_zero);
}

TEST_CASE("collinearity with a single root at t = 1", "[predicates]") {
  auto p1 = at(0, Rat(0), Rat(0), Rat(1), Rat(0));
  auto p2 = at(1, Rat(1), Rat(0), Rat(1), Rat(0));
  auto p3 = at(2, Rat(0), Rat(1), Rat(0), Rat(-1));
  TimePoly f = kdt::collinearity_poly(p1, p2, p3);
  REQUIRE(f.degree() <= 2);
  auto roots = kdt::isolate_all_roots(f);
  REQUIRE(roots.size() == 1);
  REQUIRE(roots[0].compare(kdt::IsolatedRoot::from_rational(Rat(1))) == 0);
}

TEST_CASE("collinear points sharing a direction are degenerate motion", "[predicates]") {
  auto p1 = at(0, Rat(0), Rat(0));
  auto p2 = at(1, Rat(1), Rat(1));
  auto p3 = at(2, Rat(2), Rat(2));
  REQUIRE_THROWS_AS(kdt::collinearity_poly(p1, p2, p3), kdt::degenerate_motion);
}

TEST_CASE("incircle examples with hand-computed circle", "[predicates]") {
  auto p = at(0, Rat(0), Rat(0));
  auto q = at(1, Rat(2), Rat(0));
  auto r = at(2, Rat(1), Rat(1));
  // circumcenter (1, 0), radius 1
  REQUIRE(kdt::incircle_at(p, q, r, at(3, Rat(1), Rat(1, 2)), Rat(0)) == 1);
  REQUIRE(kdt::incircle_at(p, q, r, at(3, Rat(1), Rat(-1)), Rat(0)) == 0);
  REQUIRE(kdt::incircle_at(p, q, r, at(3, Rat(5), Rat(5)), Rat(0)) == -1);
  auto c1 = at(0, Rat(0), Rat(0));
  auto c2 = at(1, Rat(1), Rat(0));
  auto c3 = at(2, Rat(2), Rat(0));
  REQUIRE_THROWS_AS(kdt::incircle_at(c1, c2, c3, p, Rat(0)), kdt::collinear_base);
}

TEST_CASE("orientation sign convention: left halfplane is L-", "[predicates]") {
  auto p = at(0, Rat(0), Rat(0));
  auto q = at(1, Rat(1), Rat(0));
  REQUIRE(kdt::orient_at(p, q, at(2, Rat(0), Rat(1)), Rat(0)) == -1);
  REQUIRE(kdt::orient_at(p, q, at(2, Rat(0), Rat(-1)), Rat(0)) == 1);
  REQUIRE(kdt::orient_at(p, q, at(2, Rat(1, 2), Rat(0)), Rat(0)) == 0);
  REQUIRE_THROWS_AS(kdt::orient_at(p, at(1, Rat(0), Rat(0)), q, Rat(0)),
                    kdt::coincident_points);
}

TEST_CASE("segment classification", "[predicates]") {
  auto p = at(0, Rat(0), Rat(0));
  auto q = at(1, Rat(2), Rat(0));
  REQUIRE(kdt::on_segment_at(p, q, at(2, Rat(1), Rat(0)), Rat(0)) ==
          kdt::SegmentPosition::InsideSegment);
  REQUIRE(kdt::on_segment_at(p, q, at(2, Rat(3), Rat(0)), Rat(0)) ==
          kdt::SegmentPosition::OnRayBeyondQ);
  REQUIRE(kdt::on_segment_at(p, q, at(2, Rat(-1), Rat(0)), Rat(0)) ==
          kdt::SegmentPosition::OnRayBeyondP);
  REQUIRE(kdt::on_segment_at(p, q, at(2, Rat(1), Rat(1)), Rat(0)) ==
          kdt::SegmentPosition::NotOnLine);
  REQUIRE_THROWS_AS(kdt::on_segment_at(p, q, at(2, Rat(0), Rat(0), Rat(0), Rat(1)), Rat(0)),
                    kdt::coincident_points);
}

TEST_CASE("sign predicates agree with the independent bigint oracle", "[predicates]") {
  std::mt19937_64 rng(424242);
  for (int it = 0; it < 2000; ++it) {
    auto pts = kdt_test::random_points(rng, 4);
    Rat t(static_cast<long>(rng() % 4001) - 2000, 100);
    t.canonicalize();
    int cross = kdt_test::oracle_cross_sign(pts[0], pts[1], pts[2], t);
    if (cross != 0) {
      REQUIRE(kdt::orient_at(pts[0], pts[1], pts[2], t) == -cross);
    }
    int ccw = kdt_test::oracle_cross_sign(pts[0], pts[1], pts[2], t);
    if (ccw != 0) {
      int inc = kdt_test::oracle_incircle_sign(pts[0], pts[1], pts[2], pts[3], t);
      REQUIRE(kdt::incircle_at(pts[0], pts[1], pts[2], pts[3], t) == inc);
      // exact algebraic-time variant must agree at rational times
      REQUIRE(kdt::incircle_at(pts[0], pts[1], pts[2], pts[3],
                               kdt::IsolatedRoot::from_rational(t)) == inc);
      REQUIRE(kdt::orient_at(pts[0], pts[1], pts[2],
                             kdt::IsolatedRoot::from_rational(t)) ==
              kdt::orient_at(pts[0], pts[1], pts[2], t));
    }
  }
}

TEST_CASE("co-circularity roots are exactly the incircle zeros", "[predicates]") {
  std::mt19937_64 rng(777);
  int checked = 0;
  while (checked < 50) {
    auto pts = kdt_test::random_points(rng, 4);
    TimePoly d;
    try {
      d = kdt::cocircularity_poly(pts[0], pts[1], pts[2], pts[3]);
    } catch (const kdt::degenerate_motion&) {
      continue;
    }
    auto roots = kdt::isolate_all_roots(d);
    for (auto& r : roots) {
      if (r.multiplicity() != 1) continue;
      // incircle vanishes at the root whenever the base stays sound there
      if (r.sign_of(kdt::orient_det_poly(pts[0], pts[1], pts[2])) == 0) continue;
      REQUIRE(kdt::incircle_at(pts[0], pts[1], pts[2], pts[3], r) == 0);
      // and is nonzero just outside the bracket
      REQUIRE(d.sign_at(r.lo()) * d.sign_at(r.hi()) < 0);
    }
    ++checked;
  }
}

TEST_CASE("root set is invariant under quadruple permutations", "[predicates]") {
  std::mt19937_64 rng(909);
  for (int it = 0; it < 30; ++it) {
    auto pts = kdt_test::random_points(rng, 4);
    TimePoly d0;
    try {
      d0 = kdt::cocircularity_poly(pts[0], pts[1], pts[2], pts[3]);
    } catch (const kdt::degenerate_motion&) {
      continue;
    }
    TimePoly d1 = kdt::cocircularity_poly(pts[2], pts[0], pts[3], pts[1]);
    TimePoly d2 = kdt::cocircularity_poly(pts[3], pts[2], pts[1], pts[0]);
    // normalized forms agree because permutations scale D by +-1
    REQUIRE(d0 == d1);
    REQUIRE(d0 == d2);
  }
}

TEST_CASE("degree bounds hold over random unit-speed tuples", "[predicates]") {
  std::mt19937_64 rng(20260810);
  for (int it = 0; it < 1000; ++it) {
    auto pts = kdt_test::random_points(rng, 4);
    try {
      TimePoly d = kdt::cocircularity_poly(pts[0], pts[1], pts[2], pts[3]);
      REQUIRE(d.degree() <= 3);
      REQUIRE(kdt::isolate_all_roots(d).size() <= 3);
    } catch (const kdt::degenerate_motion&) {
    }
    try {
      TimePoly f = kdt::collinearity_poly(pts[0], pts[1], pts[2]);
      REQUIRE(f.degree() <= 2);
      REQUIRE(kdt::isolate_all_roots(f).size() <= 2);
    } catch (const kdt::degenerate_motion&) {
    }
  }
}

TEST_CASE("random co-circularity roots match dense incircle sign scanning",
          "[predicates]") {
  // Sign-change scan of the incircle predicate on a coarse grid, refined by
  // bisection, reproduces the certified root brackets.
  std::mt19937_64 rng(5150);
  int checked = 0;
  while (checked < 10) {
    auto pts = kdt_test::random_points(rng, 4);
    TimePoly d;
    try {
      d = kdt::cocircularity_poly(pts[0], pts[1], pts[2], pts[3]);
    } catch (const kdt::degenerate_motion&) {
      continue;
    }
    if (TimePoly::gcd(d, d.derivative()).degree() >= 1) continue;
    ++checked;
    auto exact = kdt::isolate_roots(d, Rat(-20), Rat(20));
    int scanned = 0;
    double prev = d.eval_double(-20.0);
    for (double t = -20.0 + 1e-4; t <= 20.0; t += 1e-4) {
      double v = d.eval_double(t);
      if (prev != 0 && v != 0 && (prev < 0) != (v < 0)) ++scanned;
      prev = v;
    }
    REQUIRE(static_cast<std::size_t>(scanned) == exact.size());
  }
}
