#pragma once

// Exact scalar arithmetic shared by every module: GMP-backed integers and
// rationals plus the handful of combinatorial primitives (binomials with
// arbitrary integer or rational upper argument, rising factorials) that the
// series and identity-checking code needs. No floating point anywhere.

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cluscat {

using Integer = mpz_class;
using Rational = mpq_class;

// C(z, k) for arbitrary integer z and k >= 0; zero for k < 0.
// Always an integer: the product of k consecutive integers is divisible by k!.
inline Integer binomial(const Integer& z, long k) {
  if (k < 0) return 0;
  Integer num = 1;
  for (long i = 0; i < k; ++i) num *= z - i;
  Integer kfact = 1;
  for (long i = 2; i <= k; ++i) kfact *= i;
  Integer q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), kfact.get_mpz_t());
  return q;
}

inline Integer binomial(long z, long k) { return binomial(Integer(z), k); }

// C(r, k) for rational r: r(r-1)...(r-k+1)/k!.
inline Rational binomial_rational(const Rational& r, long k) {
  if (k < 0) return 0;
  Rational num = 1;
  for (long i = 0; i < k; ++i) num *= r - i;
  Integer kfact = 1;
  for (long i = 2; i <= k; ++i) kfact *= i;
  return num / Rational(kfact);
}

// Rising factorial (x)_m = x(x+1)...(x+m-1), with (x)_0 = 1.
inline Rational rising_factorial(const Rational& x, long m) {
  Rational p = 1;
  for (long i = 0; i < m; ++i) p *= x + i;
  return p;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// mpq_class(num, den) stores the fraction unreduced, but GMP arithmetic and
// comparisons assume canonical operands; always build rationals through here.
inline Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Parses "p", "-p", or "p/q". Throws on malformed input.
inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
  if (r.get_den() == 0) {
    throw std::invalid_argument("zero denominator: '" + text + "'");
  }
  r.canonicalize();
  return r;
}

}  // namespace cluscat
