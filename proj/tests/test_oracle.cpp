#include <catch2/catch_amalgamated.hpp>

#include "kdt/instance.hpp"
#include "kdt/oracle.hpp"
#include "support/test_points.hpp"

using kdt::Rat;
using kdt_test::at;

TEST_CASE("four points always produce level-0 co-circularities", "[oracle]") {
  std::vector<kdt::MovingPoint> pts{
      at(0, Rat(0), Rat(0), Rat(1), Rat(0)), at(1, Rat(2), Rat(0), Rat(-1), Rat(0)),
      at(2, Rat(1), Rat(1), Rat(0), Rat(-1)), at(3, Rat(1), Rat(-1), Rat(1), Rat(0))};
  auto census = kdt::enumerate_all_events(pts, Rat(-1, 2), Rat(1, 2));
  REQUIRE(!census.cocircularities.empty());
  bool saw_zero = false;
  for (auto& e : census.cocircularities) {
    REQUIRE(e.level == 0);  // no other points exist
    REQUIRE(e.inside.empty());
    REQUIRE(e.index >= 1);
    REQUIRE(e.index <= 3);
    if (e.time.compare(kdt::IsolatedRoot::from_rational(Rat(0))) == 0) saw_zero = true;
  }
  REQUIRE(saw_zero);
}

TEST_CASE("census is time-sorted and respects the degree bounds", "[oracle]") {
  auto doc = kdt::generate(kdt::GenKind::Uniform, 10, 99);
  auto census = kdt::enumerate_all_events(doc.points, Rat(0), Rat(10));
  for (std::size_t i = 1; i < census.cocircularities.size(); ++i)
    REQUIRE(census.cocircularities[i - 1].time.compare(census.cocircularities[i].time) <= 0);
  for (std::size_t i = 1; i < census.collinearities.size(); ++i)
    REQUIRE(census.collinearities[i - 1].time.compare(census.collinearities[i].time) <= 0);
  for (auto& [key, idxs] : census.cocirc_by_quad) REQUIRE(idxs.size() <= 3);
  for (auto& [key, idxs] : census.collin_by_triple) REQUIRE(idxs.size() <= 2);
  // k-shallow counts are monotone in k by construction of levels
  std::size_t prev = 0;
  for (int k = 0; k <= 10; ++k) {
    std::size_t cnt = 0;
    for (auto& e : census.cocircularities) cnt += e.level <= k;
    REQUIRE(cnt >= prev);
    prev = cnt;
  }
}

TEST_CASE("golden census counts for the frozen n=10 instance", "[oracle][golden]") {
  // Counts certified by the exact enumeration of (uniform, n=10, seed=99)
  // over [0, 10] and frozen; any drift is an unintended kernel change.
  auto doc = kdt::generate(kdt::GenKind::Uniform, 10, 99);
  auto census = kdt::enumerate_all_events(doc.points, Rat(0), Rat(10));
  CHECK(census.cocircularities.size() == 180);
  CHECK(census.collinearities.size() == 71);
  std::size_t level0 = 0, hull0 = 0;
  for (auto& e : census.cocircularities) level0 += e.level == 0;
  for (auto& e : census.collinearities) hull0 += e.shallowness == 0;
  CHECK(level0 == 20);
  CHECK(hull0 == 7);
}

TEST_CASE("level counting places a point at the circumcenter strictly inside",
          "[oracle]") {
  std::vector<kdt::MovingPoint> pts{
      at(0, Rat(0), Rat(0), Rat(1), Rat(0)), at(1, Rat(2), Rat(0), Rat(-1), Rat(0)),
      at(2, Rat(1), Rat(1), Rat(0), Rat(-1)), at(3, Rat(1), Rat(-1), Rat(1), Rat(0)),
      at(4, Rat(1), Rat(0), Rat(0), Rat(1))};  // at the t=0 circumcenter
  auto census = kdt::enumerate_all_events(pts, Rat(-1, 100), Rat(1, 100));
  bool found = false;
  for (auto& e : census.cocircularities) {
    if (e.quad == std::array<int, 4>{0, 1, 2, 3} &&
        e.time.compare(kdt::IsolatedRoot::from_rational(Rat(0))) == 0) {
      found = true;
      REQUIRE(e.level == 1);
      REQUIRE(e.inside == std::vector<int>{4});
    }
  }
  REQUIRE(found);
}

TEST_CASE("levels agree with high-precision midpoint evaluation", "[oracle]") {
  auto doc = kdt::generate(kdt::GenKind::Uniform, 8, 301);
  auto census = kdt::enumerate_all_events(doc.points, Rat(0), Rat(5));
  REQUIRE(!census.cocircularities.empty());
  for (auto& e : census.cocircularities) {
    // refine until the bracket is far tighter than the event separation,
    // then count in 512-bit floating point at the midpoint
    e.time.refine_below(Rat(1, 1) / Rat(mpz_class(1) << 120));
    mpf_set_default_prec(512);
    mpf_class t((e.time.lo() + e.time.hi()) / 2);
    int count = 0;
    std::array<const kdt::MovingPoint*, 4> quad{};
    int qi = 0;
    for (auto& p : doc.points)
      for (int id : e.quad)
        if (p.id == id && qi < 4) {
          quad[static_cast<std::size_t>(qi++)] = &p;
          break;
        }
    auto fx = [&](const kdt::MovingPoint& p) -> mpf_class {
      return mpf_class(p.x0) + mpf_class(p.ux) * t;
    };
    auto fy = [&](const kdt::MovingPoint& p) -> mpf_class {
      return mpf_class(p.y0) + mpf_class(p.uy) * t;
    };
    for (auto& s : doc.points) {
      if (s.id == e.quad[0] || s.id == e.quad[1] || s.id == e.quad[2] || s.id == e.quad[3])
        continue;
      mpf_class ax = fx(*quad[0]) - fx(s), ay = fy(*quad[0]) - fy(s);
      mpf_class bx = fx(*quad[1]) - fx(s), by = fy(*quad[1]) - fy(s);
      mpf_class cx = fx(*quad[2]) - fx(s), cy = fy(*quad[2]) - fy(s);
      mpf_class az = ax * ax + ay * ay, bz = bx * bx + by * by, cz = cx * cx + cy * cy;
      mpf_class det = ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) +
                      az * (bx * cy - by * cx);
      mpf_class ccw = (fx(*quad[1]) - fx(*quad[0])) * (fy(*quad[2]) - fy(*quad[0])) -
                      (fy(*quad[1]) - fy(*quad[0])) * (fx(*quad[2]) - fx(*quad[0]));
      if (det * ccw > 0) ++count;
    }
    REQUIRE(count == e.level);
  }
}

TEST_CASE("oracle cap is enforced but overridable", "[oracle]") {
  auto doc = kdt::generate(kdt::GenKind::Uniform, 6, 1);
  kdt::OracleOptions opt;
  opt.max_n = 5;
  REQUIRE_THROWS_AS(kdt::enumerate_all_events(doc.points, Rat(0), Rat(1), opt),
                    kdt::kdt_error);
  opt.max_n = 6;
  REQUIRE_NOTHROW(kdt::enumerate_all_events(doc.points, Rat(0), Rat(1), opt));
}
