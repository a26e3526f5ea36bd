#pragma once

#include <gmpxx.h>

#include <cassert>
#include <cstdint>
#include <string>

#include "nilvar/errors.hpp"

namespace nilvar {

// Exact integers and rationals.  All ranks, dimensions and form values are
// computed in these types; machine ints appear only as sizes and indices.
using Int = mpz_class;
using Rat = mpq_class;

inline long to_long(const Int& x) {
  assert(x.fits_slong_p());
  return x.get_si();
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

// Smallest generator of the multiplicative group of Z/p.
inline long primitive_root(long p) {
  assert(is_prime(p));
  if (p == 2) return 1;
  for (long g = 2; g < p; ++g) {
    long x = g % p;
    long order = 1;
    while (x != 1) {
      x = (x * g) % p;
      ++order;
    }
    if (order == p - 1) return g;
  }
  assert(false);
  return 0;
}

// Element of a prime field F_p, value held reduced to 0..p-1.  A default
// constructed element is the "wildcard zero" (p == 0): it combines with any
// modulus, so that value-initialized matrices work without a field context.
struct Fp {
  long v = 0;
  long p = 0;

  Fp() = default;
  Fp(long value, long prime) : p(prime) {
    assert(prime > 1);
    v = value % prime;
    if (v < 0) v += prime;
  }

  bool is_zero() const { return v == 0; }

  static long join(long pa, long pb) {
    if (pa == 0) return pb;
    if (pb == 0) return pa;
    assert(pa == pb);
    return pa;
  }

  friend Fp operator+(const Fp& a, const Fp& b) {
    long p = join(a.p, b.p);
    if (p == 0) return Fp();
    return Fp(a.v + b.v, p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    long p = join(a.p, b.p);
    if (p == 0) return Fp();
    return Fp(a.v - b.v, p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    long p = join(a.p, b.p);
    if (p == 0) return Fp();
    return Fp(a.v * b.v, p);
  }
  Fp operator-() const { return p == 0 ? Fp() : Fp(-v, p); }
  Fp inv() const {
    assert(p > 0 && v != 0);
    // Extended Euclid on (v, p).
    long a = v, b = p, x0 = 1, x1 = 0;
    while (b != 0) {
      long q = a / b;
      long t = a - q * b; a = b; b = t;
      t = x0 - q * x1; x0 = x1; x1 = t;
    }
    assert(a == 1);
    return Fp(x0, p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }

  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.p != 0 && b.p != 0) { assert(a.p == b.p); }
    return a.v == b.v;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

// Uniform scalar helpers so linear algebra can be written once for both
// coefficient types.
inline bool is_zero(const Rat& x) { return x == 0; }
inline bool is_zero(const Fp& x) { return x.is_zero(); }
inline Rat inv(const Rat& x) { return Rat(1) / x; }
inline Fp inv(const Fp& x) { return x.inv(); }

inline std::string to_string(const Rat& x) {
  return x.get_str();
}
inline std::string to_string(const Fp& x) { return std::to_string(x.v); }

}  // namespace nilvar
