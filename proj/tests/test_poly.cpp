#include <catch2/catch_amalgamated.hpp>

#include "kdt/poly.hpp"

using kdt::Rat;
using kdt::TimePoly;

TEST_CASE("normalization reduces to coprime integers with positive lead", "[poly]") {
  TimePoly p({Rat(-4, 6), Rat(0), Rat(2, 3)});
  p.normalize();
  REQUIRE(p.coefficients() == std::vector<Rat>{Rat(-1), Rat(0), Rat(1)});

  TimePoly q({Rat(2), Rat(0), Rat(-4)});
  q.normalize();
  REQUIRE(q.coefficients() == std::vector<Rat>{Rat(-1), Rat(0), Rat(2)});
}

TEST_CASE("arithmetic and evaluation", "[poly]") {
  TimePoly a({Rat(1), Rat(2)});   // 1 + 2t
  TimePoly b({Rat(-1), Rat(1)});  // t - 1
  TimePoly prod = a * b;          // 2t^2 + t - 1... check: (1+2t)(t-1) = 2t^2 - t - 1
  REQUIRE(prod.degree() == 2);
  REQUIRE(prod.eval(Rat(2)) == Rat(5));
  REQUIRE((a + b).eval(Rat(3)) == a.eval(Rat(3)) + b.eval(Rat(3)));
  REQUIRE((a - b).eval(Rat(3)) == a.eval(Rat(3)) - b.eval(Rat(3)));
  REQUIRE(prod.eval(Rat(1, 2)) == a.eval(Rat(1, 2)) * b.eval(Rat(1, 2)));
  REQUIRE(a.derivative().coefficients() == std::vector<Rat>{Rat(2)});
}

TEST_CASE("remainder and exact division", "[poly]") {
  TimePoly d({Rat(-1), Rat(1)});                      // t - 1
  TimePoly p = d * d * TimePoly({Rat(2), Rat(1)});    // (t-1)^2 (t+2)
  REQUIRE(p.rem(d).is_zero());
  TimePoly q = p.divide_exact(d);
  REQUIRE((q * d - p).is_zero());
  TimePoly r = TimePoly({Rat(1), Rat(0), Rat(1)}).rem(d);  // t^2+1 mod t-1 -> 2
  REQUIRE(r.degree() == 0);
  REQUIRE(r.coeff(0) == Rat(2));
}

TEST_CASE("gcd and squarefree part", "[poly]") {
  TimePoly d1({Rat(-1), Rat(1)});  // t - 1
  TimePoly d2({Rat(2), Rat(1)});   // t + 2
  TimePoly p = d1 * d1 * d2;
  TimePoly g = TimePoly::gcd(p, p.derivative());
  REQUIRE(g.degree() == 1);
  REQUIRE(g.sign_at(Rat(1)) == 0);
  TimePoly sq = p.squarefree();
  REQUIRE(sq.degree() == 2);
  REQUIRE(sq.sign_at(Rat(1)) == 0);
  REQUIRE(sq.sign_at(Rat(-2)) == 0);

  TimePoly h = TimePoly::gcd(d1 * d2, d1 * TimePoly({Rat(5), Rat(1)}));
  REQUIRE(h.degree() == 1);
  REQUIRE(h.sign_at(Rat(1)) == 0);
}

TEST_CASE("root bound encloses all real roots", "[poly]") {
  TimePoly p({Rat(-6), Rat(11), Rat(-6), Rat(1)});  // (t-1)(t-2)(t-3)
  Rat b = p.root_bound();
  REQUIRE(b >= 3);
  REQUIRE(p.sign_at(b) != 0);
  REQUIRE(p.sign_at(-b) != 0);
}
