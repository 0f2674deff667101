#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace treepack {

// Exact arithmetic for loads, thresholds and partition values. mpq_class is
// always kept canonical (gcd 1, positive denominator), which is exactly the
// contract the rest of the code relies on.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline long rat_floor(const Rational& q) {
  mpz_class z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z.get_si();
}

inline long rat_ceil(const Rational& q) {
  mpz_class z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z.get_si();
}

inline bool rat_is_integer(const Rational& q) { return q.get_den() == 1; }

inline double rat_double(const Rational& q) { return q.get_d(); }

}  // namespace treepack
