#pragma once
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kdt/errors.hpp"
#include "kdt/poly.hpp"

namespace kdt {

// Sturm chain of a squarefree polynomial.  Counts distinct real roots in
// half-open intervals (a, b]; the evaluation points must not be roots.
class SturmChain {
 public:
  explicit SturmChain(const TimePoly& squarefree) {
    chain_.push_back(squarefree);
    if (squarefree.degree() >= 1) chain_.push_back(squarefree.derivative());
    while (chain_.back().degree() >= 1) {
      TimePoly r = chain_[chain_.size() - 2].rem(chain_.back());
      if (r.is_zero()) break;
      r.normalize_signed();
      chain_.push_back(-r);
    }
  }

  int variations(const Rat& x) const {
    int v = 0, prev = 0;
    for (const auto& p : chain_) {
      int s = p.sign_at(x);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  }

  // Number of distinct roots in (a, b]; requires p(a) != 0.
  int count(const Rat& a, const Rat& b) const {
    return variations(a) - variations(b);
  }

 private:
  std::vector<TimePoly> chain_;
};

// An exact point on the time axis: either a rational or the unique root of a
// squarefree polynomial inside a certified bracket with sign change.
// Copies share the representation, so interval refinements persist.
class IsolatedRoot {
 public:
  IsolatedRoot() = default;

  static IsolatedRoot from_rational(const Rat& v, int multiplicity = 1) {
    auto rep = std::make_shared<Rep>();
    rep->exact = true;
    rep->value = v;
    rep->lo = v - Rat(1, 1024);
    rep->hi = v + Rat(1, 1024);
    rep->sq = TimePoly::linear_root(v);
    rep->mult = multiplicity;
    IsolatedRoot r;
    r.rep_ = std::move(rep);
    return r;
  }

  static IsolatedRoot from_bracket(TimePoly squarefree, Rat lo, Rat hi,
                                   int multiplicity) {
    auto rep = std::make_shared<Rep>();
    rep->exact = false;
    rep->sq = std::move(squarefree);
    rep->lo = std::move(lo);
    rep->hi = std::move(hi);
    rep->mult = multiplicity;
    IsolatedRoot r;
    r.rep_ = std::move(rep);
    return r;
  }

  static IsolatedRoot exact_with_bracket(const Rat& v, TimePoly squarefree,
                                         Rat lo, Rat hi, int multiplicity) {
    auto rep = std::make_shared<Rep>();
    rep->exact = true;
    rep->value = v;
    rep->sq = std::move(squarefree);
    rep->lo = std::move(lo);
    rep->hi = std::move(hi);
    rep->mult = multiplicity;
    IsolatedRoot r;
    r.rep_ = std::move(rep);
    return r;
  }

  bool valid() const { return rep_ != nullptr; }
  void refine_once() const {
    std::lock_guard<std::mutex> g(rep_->mu);
    refine_locked(*rep_);
  }
  bool is_rational() const { return rep_->exact; }
  const Rat& rational_value() const { return rep_->value; }
  int multiplicity() const { return rep_->mult; }
  void set_multiplicity(int m) { rep_->mult = m; }

  Rat lo() const {
    std::lock_guard<std::mutex> g(rep_->mu);
    return rep_->lo;
  }
  Rat hi() const {
    std::lock_guard<std::mutex> g(rep_->mu);
    return rep_->hi;
  }
  const TimePoly& defining_poly() const { return rep_->sq; }

  double float_estimate() const {
    std::lock_guard<std::mutex> g(rep_->mu);
    if (rep_->exact) return to_double(rep_->value);
    Rat tol = Rat(1, 1) / Rat(mpz_class(1) << 48);
    Rat scale = std::max(Rat(1), rat_abs(rep_->hi));
    while (rep_->hi - rep_->lo > tol * scale) refine_locked(*rep_);
    return to_double((rep_->lo + rep_->hi) / 2);
  }

  void refine_below(const Rat& width) const {
    std::lock_guard<std::mutex> g(rep_->mu);
    while (!rep_->exact && rep_->hi - rep_->lo > width) refine_locked(*rep_);
  }

  // Exact three-way comparison.
  int compare(const IsolatedRoot& o) const {
    if (rep_ == o.rep_) return 0;
    if (rep_->exact && o.rep_->exact) {
      return cmp(rep_->value, o.rep_->value) < 0   ? -1
             : cmp(rep_->value, o.rep_->value) > 0 ? 1
                                                   : 0;
    }
    if (rep_->exact) return -o.compare_with_rational(rep_->value);
    if (o.rep_->exact) return compare_with_rational(o.rep_->value);
    return compare_brackets(o);
  }

  // Sign of q at this number, decided exactly.
  int sign_of(const TimePoly& q) const {
    if (q.is_zero()) return 0;
    if (rep_->exact) return q.sign_at(rep_->value);
    std::lock_guard<std::mutex> g(rep_->mu);
    TimePoly qs = q.squarefree();
    // Bracket endpoints are never roots of sq, hence not of the gcd; the
    // Sturm count alone decides whether q vanishes at this root.
    TimePoly h = TimePoly::gcd(rep_->sq, qs);
    if (h.degree() >= 1 && SturmChain(h).count(rep_->lo, rep_->hi) > 0)
      return 0;
    SturmChain sq(qs);
    while (true) {
      if (rep_->exact) return q.sign_at(rep_->value);
      if (qs.sign_at(rep_->lo) != 0 && qs.sign_at(rep_->hi) != 0 &&
          sq.count(rep_->lo, rep_->hi) == 0) {
        Rat mid = (rep_->lo + rep_->hi) / 2;
        int s = q.sign_at(mid);
        if (s != 0) return s;
      }
      refine_locked(*rep_);
    }
  }

  std::string to_string() const {
    std::lock_guard<std::mutex> g(rep_->mu);
    if (rep_->exact) return rat_to_string(rep_->value);
    return "(" + rat_to_string(rep_->lo) + ":" + rat_to_string(rep_->hi) + ")";
  }

 private:
  struct Rep {
    TimePoly sq;  // squarefree defining polynomial
    Rat lo, hi;   // certified bracket, endpoints are never roots of sq
    Rat value;    // set when exact
    bool exact = false;
    int mult = 1;
    mutable std::mutex mu;
  };

  static void refine_locked(Rep& r) {
    if (r.exact) {
      Rat qlo = (r.lo + r.value) / 2, qhi = (r.value + r.hi) / 2;
      r.lo = qlo;
      r.hi = qhi;
      return;
    }
    Rat mid = (r.lo + r.hi) / 2;
    int sm = r.sq.sign_at(mid);
    if (sm == 0) {
      // The root happens to be rational; keep the bracket and remember it.
      r.exact = true;
      r.value = mid;
      return;
    }
    if (sm == r.sq.sign_at(r.lo))
      r.lo = mid;
    else
      r.hi = mid;
  }

  // -1/0/1 of (*this - v).
  int compare_with_rational(const Rat& v) const {
    std::lock_guard<std::mutex> g(rep_->mu);
    if (rep_->exact)
      return cmp(rep_->value, v) < 0 ? -1 : (cmp(rep_->value, v) > 0 ? 1 : 0);
    if (rep_->sq.sign_at(v) == 0 && rep_->lo < v && v < rep_->hi) return 0;
    while (rep_->lo < v && v < rep_->hi) refine_locked(*rep_);
    if (rep_->exact)
      return cmp(rep_->value, v) < 0 ? -1 : (cmp(rep_->value, v) > 0 ? 1 : 0);
    return v <= rep_->lo ? 1 : -1;
  }

  int compare_brackets(const IsolatedRoot& o) const {
    // Lock in address order.
    Rep* a = rep_.get();
    Rep* b = o.rep_.get();
    std::scoped_lock lock(std::min(a, b)->mu, std::max(a, b)->mu);
    bool equality_tested = false;
    while (true) {
      if (a->exact || b->exact) break;  // fall back to top-level dispatch
      if (a->hi <= b->lo) return -1;
      if (b->hi <= a->lo) return 1;
      if (!equality_tested) {
        equality_tested = true;
        TimePoly h = TimePoly::gcd(a->sq, b->sq);
        if (h.degree() >= 1) {
          Rat olo = std::max(a->lo, b->lo), ohi = std::min(a->hi, b->hi);
          if (olo < ohi && SturmChain(h).count(olo, ohi) > 0) return 0;
        }
      }
      refine_locked(*a);
      refine_locked(*b);
    }
    // One became exact during refinement; redo via the rational paths.
    if (a->exact && b->exact)
      return cmp(a->value, b->value) < 0 ? -1
             : cmp(a->value, b->value) > 0 ? 1 : 0;
    if (a->exact) {
      Rat v = a->value;
      if (b->sq.sign_at(v) == 0 && b->lo < v && v < b->hi) return 0;
      while (b->lo < v && v < b->hi && !b->exact) refine_locked(*b);
      if (b->exact)
        return cmp(v, b->value) < 0 ? -1 : (cmp(v, b->value) > 0 ? 1 : 0);
      return v <= b->lo ? -1 : 1;
    }
    Rat v = b->value;
    if (a->sq.sign_at(v) == 0 && a->lo < v && v < a->hi) return 0;
    while (a->lo < v && v < a->hi && !a->exact) refine_locked(*a);
    if (a->exact)
      return cmp(a->value, v) < 0 ? -1 : (cmp(a->value, v) > 0 ? 1 : 0);
    return v <= a->lo ? 1 : -1;
  }

  std::shared_ptr<Rep> rep_;
};

inline bool operator<(const IsolatedRoot& a, const IsolatedRoot& b) {
  return a.compare(b) < 0;
}
inline bool operator==(const IsolatedRoot& a, const IsolatedRoot& b) {
  return a.compare(b) == 0;
}

// A rational strictly between two exact numbers (requires a < b).
inline Rat rational_between(const IsolatedRoot& a, const IsolatedRoot& b) {
  Rat width(1, 4);
  while (true) {
    Rat ahi = a.is_rational() ? a.rational_value() : a.hi();
    Rat blo = b.is_rational() ? b.rational_value() : b.lo();
    if (ahi < blo) return (ahi + blo) / 2;
    a.refine_below(width);
    b.refine_below(width);
    width /= 16;
  }
}

inline Rat rational_between(const Rat& a, const IsolatedRoot& b) {
  return rational_between(IsolatedRoot::from_rational(a), b);
}
inline Rat rational_between(const IsolatedRoot& a, const Rat& b) {
  return rational_between(a, IsolatedRoot::from_rational(b));
}

// All real roots of `poly` in the closed window [lo, hi], each certified by
// Sturm counting, sorted increasingly, with multiplicities relative to the
// original polynomial.  Throws degenerate_motion on the zero polynomial.
inline std::vector<IsolatedRoot> isolate_roots(const TimePoly& poly,
                                               const Rat& window_lo,
                                               const Rat& window_hi) {
  if (poly.is_zero())
    throw degenerate_motion("isolate_roots: identically zero polynomial");
  if (poly.degree() == 0) return {};

  TimePoly sq = poly.squarefree();
  std::vector<Rat> exact_roots;
  std::vector<std::pair<Rat, Rat>> brackets;

  // Rational roots discovered at window endpoints or bisection points are
  // deflated away so that every remaining bracket endpoint is a non-root.
  if (sq.sign_at(window_lo) == 0) {
    exact_roots.push_back(window_lo);
    sq = sq.divide_exact(TimePoly::linear_root(window_lo));
  }
  if (sq.degree() >= 1 && sq.sign_at(window_hi) == 0) {
    exact_roots.push_back(window_hi);
    sq = sq.divide_exact(TimePoly::linear_root(window_hi));
  }

  bool restart = true;
  while (restart) {
    restart = false;
    brackets.clear();
    if (sq.degree() < 1) break;
    SturmChain chain(sq);
    std::vector<std::pair<Rat, Rat>> stack{{window_lo, window_hi}};
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      int k = chain.count(a, b);
      if (k == 0) continue;
      if (k == 1) {
        brackets.emplace_back(a, b);
        continue;
      }
      Rat mid = (a + b) / 2;
      if (sq.sign_at(mid) == 0) {
        exact_roots.push_back(mid);
        sq = sq.divide_exact(TimePoly::linear_root(mid));
        restart = true;
        break;
      }
      stack.emplace_back(a, mid);
      stack.emplace_back(mid, b);
    }
  }

  TimePoly full_sq = poly.squarefree();
  std::vector<IsolatedRoot> roots;
  // Brackets certify a unique root of the *deflated* squarefree polynomial,
  // which also defines them; deflated-away rational roots are not its roots,
  // so the bracket invariants hold even when one lies nearby.
  for (auto& [a, b] : brackets)
    roots.push_back(IsolatedRoot::from_bracket(sq, a, b, 1));
  for (const Rat& v : exact_roots) {
    // Re-certify a bracket around the exact value against the full
    // squarefree polynomial.
    Rat d(1, 2);
    SturmChain chain(full_sq);
    while (true) {
      Rat a = v - d, c = v + d;
      if (full_sq.sign_at(a) != 0 && full_sq.sign_at(c) != 0 &&
          chain.count(a, c) == 1) {
        roots.push_back(IsolatedRoot::exact_with_bracket(v, full_sq, a, c, 1));
        break;
      }
      d /= 64;
    }
  }
  // Pairwise disjoint intervals: refine until every pair separates.
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      int c = roots[i].compare(roots[j]);
      if (c == 0) throw kdt_error("isolate_roots: duplicate root");
      const IsolatedRoot& lo_r = c < 0 ? roots[i] : roots[j];
      const IsolatedRoot& hi_r = c < 0 ? roots[j] : roots[i];
      while (lo_r.hi() > hi_r.lo()) {
        lo_r.refine_once();
        hi_r.refine_once();
      }
    }
  std::sort(roots.begin(), roots.end(),
            [](const IsolatedRoot& x, const IsolatedRoot& y) {
              return x.compare(y) < 0;
            });

  // Multiplicities: a root of multiplicity m in poly survives m-1 rounds of
  // gcd(h, h').
  TimePoly g = TimePoly::gcd(poly, poly.derivative());
  if (g.degree() >= 1) {
    for (auto& r : roots) {
      int m = 1;
      TimePoly h = g;
      while (h.degree() >= 1 && r.sign_of(h) == 0) {
        ++m;
        h = TimePoly::gcd(h, h.derivative());
      }
      r.set_multiplicity(m);
    }
  }
  return roots;
}

// All real roots over the whole time axis.
inline std::vector<IsolatedRoot> isolate_all_roots(const TimePoly& poly) {
  if (poly.is_zero())
    throw degenerate_motion("isolate_all_roots: identically zero polynomial");
  if (poly.degree() == 0) return {};
  Rat b = poly.root_bound();
  return isolate_roots(poly, -b, b);
}

}  // namespace kdt
