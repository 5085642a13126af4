#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "kdt/errors.hpp"

namespace kdt {

// Exact rational scalar used by every acceptance-grade computation.
using Rat = mpq_class;

inline int sign(const Rat& x) { return sgn(x); }

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline double to_double(const Rat& x) { return x.get_d(); }

inline Rat rat_from_long(long n, long d = 1) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

// Canonical "p/q" encoding ("p" when q == 1).  This is the wire format used
// by instance documents, event logs and reports.
inline std::string rat_to_string(const Rat& x) { return x.get_str(); }

inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw parse_error("empty rational literal");
  // Accept "p", "p/q" and plain decimal literals such as "0.25".
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    mpz_class num, den;
    if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
      throw parse_error("bad decimal literal: " + s);
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw parse_error("bad rational literal: " + s);
  r.canonicalize();
  if (r.get_den() == 0) throw parse_error("zero denominator: " + s);
  return r;
}

// Exact conversion; every finite double is a rational.
inline Rat rat_from_double(double x) {
  Rat r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

}  // namespace kdt
