#include <catch2/catch_amalgamated.hpp>

#include "kdt/instance.hpp"
#include "kdt/oracle.hpp"
#include "kdt/static_delaunay.hpp"

using kdt::Rat;

TEST_CASE("generation is deterministic and byte-identical", "[instance]") {
  auto a = kdt::generate(kdt::GenKind::Uniform, 16, 7);
  auto b = kdt::generate(kdt::GenKind::Uniform, 16, 7);
  REQUIRE(kdt::serialize(a) == kdt::serialize(b));
  auto c = kdt::generate(kdt::GenKind::Uniform, 16, 8);
  REQUIRE(kdt::serialize(a) != kdt::serialize(c));
}

TEST_CASE("serialization round-trips byte-identically", "[instance]") {
  for (auto kind : {kdt::GenKind::Uniform, kdt::GenKind::Clustered,
                    kdt::GenKind::AdversarialTwoLines}) {
    auto doc = kdt::generate(kind, 12, 3);
    std::string text = kdt::serialize(doc);
    auto parsed = kdt::parse_instance(text);
    REQUIRE(kdt::serialize(parsed) == text);
    REQUIRE(parsed.points.size() == doc.points.size());
  }
}

TEST_CASE("three generated points are never collinear", "[instance]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto doc = kdt::generate(kdt::GenKind::Uniform, 3, seed);
    REQUIRE_NOTHROW(kdt::build_delaunay(doc.points, doc.window_lo));
  }
}

TEST_CASE("generated instances satisfy the kernel invariants", "[instance]") {
  auto doc = kdt::generate(kdt::GenKind::Uniform, 24, 11);
  for (auto& p : doc.points) REQUIRE(p.ux * p.ux + p.uy * p.uy == Rat(1));
  REQUIRE_NOTHROW(kdt::build_delaunay(doc.points, Rat(0)));
}

TEST_CASE("golden counts for the frozen (uniform, 16, seed=7) instance",
          "[instance][golden]") {
  // Certified once by the exact oracle over [0, 10]; frozen thereafter.
  auto doc = kdt::generate(kdt::GenKind::Uniform, 16, 7);
  auto census = kdt::enumerate_all_events(doc.points, Rat(0), Rat(10));
  CHECK(census.cocircularities.size() == 1853);
  CHECK(census.collinearities.size() == 450);
  std::size_t level0 = 0, hull0 = 0;
  for (auto& e : census.cocircularities) level0 += e.level == 0;
  for (auto& e : census.collinearities) hull0 += e.shallowness == 0;
  CHECK(level0 == 71);
  CHECK(hull0 == 15);
}

TEST_CASE("parser rejects malformed documents", "[instance]") {
  REQUIRE_THROWS_AS(kdt::parse_instance(std::string("bogus")), kdt::parse_error);
  REQUIRE_THROWS_AS(kdt::parse_instance(std::string("kdt-instance 2\n")), kdt::parse_error);
  // a direction that is not unit length
  std::string bad =
      "kdt-instance 1\ngenerator manual\nseed 0\nwindow 0 1\nn 1\np 0 0 0 1 1\n";
  REQUIRE_THROWS_AS(kdt::parse_instance(bad), kdt::parse_error);
}

TEST_CASE("jitter perturbs positions by at most 2^-50", "[instance]") {
  auto doc = kdt::generate(kdt::GenKind::Uniform, 8, 5);
  auto moved = kdt::jitter_instance(doc, 1);
  Rat bound = Rat(1) / Rat(mpz_class(1) << 50);
  for (std::size_t i = 0; i < doc.points.size(); ++i) {
    REQUIRE(kdt::rat_abs(moved.points[i].x0 - doc.points[i].x0) <= bound);
    REQUIRE(kdt::rat_abs(moved.points[i].y0 - doc.points[i].y0) <= bound);
    REQUIRE(moved.points[i].ux == doc.points[i].ux);
  }
}
