#pragma once
#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "kdt/rational.hpp"

namespace kdt {

enum class PolyKind { Cocircularity, Collinearity, Generic };

// Univariate polynomial in the time parameter, coefficients lowest degree
// first.  Event polynomials keep exact rational coefficients; `normalize`
// rescales them to coprime integers with a positive leading coefficient, so
// equal root sets get equal representations.
class TimePoly {
 public:
  TimePoly() = default;
  explicit TimePoly(std::vector<Rat> coeffs, PolyKind kind = PolyKind::Generic)
      : c_(std::move(coeffs)), kind_(kind) {
    trim();
  }
  TimePoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

  static TimePoly zero() { return TimePoly(); }
  static TimePoly constant(const Rat& a) { return TimePoly({a}); }
  // x - a, handy for deflation.
  static TimePoly linear_root(const Rat& a) { return TimePoly({-a, Rat(1)}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  PolyKind kind() const { return kind_; }
  void set_kind(PolyKind k) { kind_ = k; }

  const std::vector<Rat>& coefficients() const { return c_; }
  const Rat& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
  const Rat& leading() const { return c_.back(); }

  Rat eval(const Rat& t) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }
  double eval_double(double t) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * t + it->get_d();
    return acc;
  }
  int sign_at(const Rat& t) const { return sign(eval(t)); }

  TimePoly derivative() const {
    if (c_.size() <= 1) return zero();
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return TimePoly(std::move(d));
  }

  TimePoly operator-() const {
    std::vector<Rat> r(c_);
    for (auto& x : r) x = -x;
    return TimePoly(std::move(r), kind_);
  }

  friend TimePoly operator+(const TimePoly& a, const TimePoly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return TimePoly(std::move(r));
  }
  friend TimePoly operator-(const TimePoly& a, const TimePoly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return TimePoly(std::move(r));
  }
  friend TimePoly operator*(const TimePoly& a, const TimePoly& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return TimePoly(std::move(r));
  }
  friend TimePoly operator*(const Rat& s, const TimePoly& a) {
    std::vector<Rat> r(a.c_);
    for (auto& x : r) x *= s;
    return TimePoly(std::move(r), a.kind_);
  }

  friend bool operator==(const TimePoly& a, const TimePoly& b) {
    return a.c_ == b.c_;
  }

  // Euclidean remainder of *this by b (b nonzero).
  TimePoly rem(const TimePoly& b) const {
    TimePoly r = *this;
    int db = b.degree();
    while (!r.is_zero() && r.degree() >= db) {
      Rat q = r.leading() / b.leading();
      int shift = r.degree() - db;
      for (int i = 0; i <= db; ++i)
        r.c_[static_cast<std::size_t>(i + shift)] -= q * b.c_[static_cast<std::size_t>(i)];
      r.trim();
    }
    return r;
  }

  // Exact quotient; requires that b divides *this.
  TimePoly divide_exact(const TimePoly& b) const {
    TimePoly r = *this;
    int db = b.degree();
    std::vector<Rat> q(static_cast<std::size_t>(std::max(0, r.degree() - db + 1)), Rat(0));
    while (!r.is_zero() && r.degree() >= db) {
      Rat f = r.leading() / b.leading();
      int shift = r.degree() - db;
      q[static_cast<std::size_t>(shift)] = f;
      for (int i = 0; i <= db; ++i)
        r.c_[static_cast<std::size_t>(i + shift)] -= f * b.c_[static_cast<std::size_t>(i)];
      r.trim();
    }
    return TimePoly(std::move(q));
  }

  // Scale so coefficients become coprime integers.  `signed_scale` keeps the
  // sign of every value (scaling factor positive); plain `normalize` also
  // flips to a positive leading coefficient.
  void normalize_signed() {
    if (c_.empty()) return;
    mpz_class den_lcm(1), num_gcd(0);
    for (const auto& x : c_) {
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
    }
    for (auto& x : c_) x *= Rat(den_lcm);
    for (const auto& x : c_) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num().get_mpz_t());
    }
    if (num_gcd > 1)
      for (auto& x : c_) x /= Rat(num_gcd);
    for (auto& x : c_) x.canonicalize();
  }
  void normalize() {
    normalize_signed();
    if (!c_.empty() && sign(c_.back()) < 0)
      for (auto& x : c_) x = -x;
  }
  TimePoly normalized() const {
    TimePoly p = *this;
    p.normalize();
    return p;
  }

  // Monic gcd is awkward over Z, so the result is content-normalized with a
  // positive leading coefficient instead.  gcd(0, b) == normalized b.
  static TimePoly gcd(TimePoly a, TimePoly b) {
    while (!b.is_zero()) {
      TimePoly r = a.rem(b);
      a = std::move(b);
      b = std::move(r);
    }
    a.normalize();
    return a;
  }

  // Square-free part (roots preserved, multiplicities dropped).
  TimePoly squarefree() const {
    if (degree() <= 1) return normalized();
    TimePoly g = gcd(*this, derivative());
    if (g.degree() <= 0) return normalized();
    TimePoly q = divide_exact(g);
    q.normalize();
    return q;
  }

  // Cauchy bound: all real roots lie in [-B, B].
  Rat root_bound() const {
    Rat m(0);
    for (std::size_t i = 0; i + 1 < c_.size(); ++i)
      m = std::max(m, rat_abs(c_[i] / c_.back()));
    return m + 1;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (sign(c_[i]) == 0) continue;
      if (!s.empty()) s += " + ";
      s += rat_to_string(c_[i]);
      if (i == 1) s += "*t";
      if (i > 1) s += "*t^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

 private:
  void trim() {
    while (!c_.empty() && sign(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
  PolyKind kind_ = PolyKind::Generic;
};

}  // namespace kdt
