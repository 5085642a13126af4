#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "kdt/roots.hpp"

using kdt::IsolatedRoot;
using kdt::Rat;
using kdt::TimePoly;

namespace {

// Dense-sampling root oracle: scan for sign changes on a uniform grid and
// bisect each bracket.  Misses nothing when the scan step is below the root
// separation, which holds for the small integer polynomials used here.
std::vector<double> scan_roots(const TimePoly& p, double lo, double hi, double step) {
  std::vector<double> roots;
  double prev_t = lo;
  double prev_v = p.eval_double(lo);
  for (double t = lo + step; t <= hi + step / 2; t += step) {
    double v = p.eval_double(t);
    if (prev_v == 0) {
      roots.push_back(prev_t);
    } else if (v != 0 && std::signbit(v) != std::signbit(prev_v)) {
      double a = prev_t, b = t;
      for (int it = 0; it < 80; ++it) {
        double m = (a + b) / 2;
        double fm = p.eval_double(m);
        if (fm == 0) {
          a = b = m;
          break;
        }
        if (std::signbit(fm) == std::signbit(p.eval_double(a)))
          a = m;
        else
          b = m;
      }
      roots.push_back((a + b) / 2);
    }
    prev_t = t;
    prev_v = v;
  }
  return roots;
}

}  // namespace

TEST_CASE("t^3 - t isolates to {-1, 0, 1}", "[roots]") {
  TimePoly p({Rat(0), Rat(-1), Rat(0), Rat(1)});
  auto roots = kdt::isolate_roots(p, Rat(-2), Rat(2));
  REQUIRE(roots.size() == 3);
  REQUIRE(roots[0].compare(IsolatedRoot::from_rational(Rat(-1))) == 0);
  REQUIRE(roots[1].compare(IsolatedRoot::from_rational(Rat(0))) == 0);
  REQUIRE(roots[2].compare(IsolatedRoot::from_rational(Rat(1))) == 0);
  for (auto& r : roots) REQUIRE(r.multiplicity() == 1);
}

TEST_CASE("t^2 + 1 has no real roots", "[roots]") {
  TimePoly p({Rat(1), Rat(0), Rat(1)});
  REQUIRE(kdt::isolate_roots(p, Rat(-100), Rat(100)).empty());
}

TEST_CASE("zero polynomial is rejected", "[roots]") {
  REQUIRE_THROWS_AS(kdt::isolate_roots(TimePoly::zero(), Rat(0), Rat(1)),
                    kdt::degenerate_motion);
}

TEST_CASE("multiplicities from repeated factors", "[roots]") {
  TimePoly d1({Rat(-1), Rat(1)}), d2({Rat(2), Rat(1)});
  auto roots = kdt::isolate_all_roots(d1 * d1 * d2);
  REQUIRE(roots.size() == 2);
  REQUIRE(roots[0].compare(IsolatedRoot::from_rational(Rat(-2))) == 0);
  REQUIRE(roots[0].multiplicity() == 1);
  REQUIRE(roots[1].compare(IsolatedRoot::from_rational(Rat(1))) == 0);
  REQUIRE(roots[1].multiplicity() == 2);

  TimePoly tr = d1 * d1 * d1;
  auto r3 = kdt::isolate_all_roots(tr);
  REQUIRE(r3.size() == 1);
  REQUIRE(r3[0].multiplicity() == 3);
}

TEST_CASE("window endpoints that are roots are included", "[roots]") {
  TimePoly p({Rat(0), Rat(-1), Rat(1)});  // t(t-1)
  auto roots = kdt::isolate_roots(p, Rat(0), Rat(1));
  REQUIRE(roots.size() == 2);
  auto inner = kdt::isolate_roots(p, Rat(1, 4), Rat(3, 4));
  REQUIRE(inner.empty());
}

TEST_CASE("bracket invariant: certified sign change for simple roots", "[roots]") {
  TimePoly p({Rat(-2), Rat(0), Rat(1)});  // t^2 - 2
  auto roots = kdt::isolate_all_roots(p);
  REQUIRE(roots.size() == 2);
  for (auto& r : roots) {
    TimePoly sq = r.defining_poly();
    REQUIRE(sq.sign_at(r.lo()) * sq.sign_at(r.hi()) < 0);
    REQUIRE(r.lo() < r.hi());
  }
  REQUIRE(roots[1].float_estimate() == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("sign_of decides signs of foreign polynomials exactly", "[roots]") {
  TimePoly p({Rat(-2), Rat(0), Rat(1)});  // root sqrt(2)
  auto r = kdt::isolate_roots(p, Rat(0), Rat(2)).at(0);
  REQUIRE(r.sign_of(TimePoly({Rat(-3, 2), Rat(1)})) < 0);   // sqrt2 < 3/2
  REQUIRE(r.sign_of(TimePoly({Rat(-7, 5), Rat(1)})) > 0);   // sqrt2 > 7/5
  REQUIRE(r.sign_of(p) == 0);
  REQUIRE(r.sign_of(p * TimePoly({Rat(1), Rat(1)})) == 0);  // shared factor
  REQUIRE(r.sign_of(TimePoly({Rat(5)})) > 0);
  REQUIRE(r.sign_of(TimePoly::zero()) == 0);
}

TEST_CASE("comparison across polynomials, including exact equality", "[roots]") {
  auto sqrt2 = kdt::isolate_roots(TimePoly({Rat(-2), Rat(0), Rat(1)}), Rat(0), Rat(2)).at(0);
  auto sqrt3 = kdt::isolate_roots(TimePoly({Rat(-3), Rat(0), Rat(1)}), Rat(0), Rat(2)).at(0);
  REQUIRE(sqrt2.compare(sqrt3) < 0);
  REQUIRE(sqrt3.compare(sqrt2) > 0);

  TimePoly other = TimePoly({Rat(-2), Rat(0), Rat(1)}) * TimePoly({Rat(-5), Rat(1)});
  auto sqrt2b = kdt::isolate_roots(other, Rat(0), Rat(2)).at(0);
  REQUIRE(sqrt2.compare(sqrt2b) == 0);

  Rat between = kdt::rational_between(sqrt2, sqrt3);
  REQUIRE(sqrt2.compare(IsolatedRoot::from_rational(between)) < 0);
  REQUIRE(sqrt3.compare(IsolatedRoot::from_rational(between)) > 0);
}

TEST_CASE("rational vs algebraic comparisons", "[roots]") {
  auto sqrt2 = kdt::isolate_roots(TimePoly({Rat(-2), Rat(0), Rat(1)}), Rat(0), Rat(2)).at(0);
  REQUIRE(sqrt2.compare(IsolatedRoot::from_rational(Rat(1))) > 0);
  REQUIRE(sqrt2.compare(IsolatedRoot::from_rational(Rat(3, 2))) < 0);
  REQUIRE(IsolatedRoot::from_rational(Rat(7, 5)).compare(sqrt2) < 0);
}

TEST_CASE("random cubics agree with the dense scan oracle", "[roots]") {
  std::mt19937_64 rng(20260810);
  int tested = 0;
  while (tested < 300) {
    std::vector<Rat> c(4);
    for (auto& x : c) x = Rat(static_cast<long>(rng() % 19) - 9);
    TimePoly p(c);
    if (p.degree() < 1) continue;
    if (TimePoly::gcd(p, p.derivative()).degree() >= 1) continue;  // keep squarefree
    ++tested;
    auto exact = kdt::isolate_all_roots(p);
    double bound = kdt::to_double(p.root_bound()) + 1;
    auto scanned = scan_roots(p, -bound, bound, 1e-4);
    REQUIRE(exact.size() == scanned.size());
    for (std::size_t i = 0; i < exact.size(); ++i)
      REQUIRE(exact[i].float_estimate() == Catch::Approx(scanned[i]).margin(1e-7));
  }
}
