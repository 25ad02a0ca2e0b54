#pragma once

// Exact integer and rational helpers shared by all layers.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qfkit/error.hpp"

namespace qfkit {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline long long to_ll(const BigInt& x) {
  if (x > BigInt(std::numeric_limits<long long>::max()) ||
      x < BigInt(std::numeric_limits<long long>::min() + 1)) {
    fail(ErrorCode::Overflow, "integer does not fit in 64 bits: " + x.str());
  }
  return static_cast<long long>(x);
}

inline long long checked_mul(long long a, long long b) {
  __int128 r = static_cast<__int128>(a) * b;
  if (r > std::numeric_limits<long long>::max() || r < std::numeric_limits<long long>::min() + 1) {
    fail(ErrorCode::Overflow, "64-bit product overflow");
  }
  return static_cast<long long>(r);
}

inline long long mod_floor(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

inline unsigned long long mulmod(unsigned long long a, unsigned long long b, unsigned long long m) {
  return static_cast<unsigned long long>(static_cast<unsigned __int128>(a) * b % m);
}

inline unsigned long long powmod(unsigned long long b, unsigned long long e, unsigned long long m) {
  unsigned long long r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  unsigned long long d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit inputs.
  for (unsigned long long a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    unsigned long long x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline unsigned long long pollard_rho(unsigned long long n) {
  if (n % 2 == 0) return 2;
  for (unsigned long long c = 1;; ++c) {
    auto f = [&](unsigned long long x) { return (mulmod(x, x, n) + c) % n; };
    unsigned long long x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(unsigned long long n, std::map<unsigned long long, int>& out) {
  if (n == 1) return;
  for (unsigned long long p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  unsigned long long d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization of |n| (n != 0).
inline std::map<unsigned long long, int> factorize(long long n) {
  if (n == 0) fail(ErrorCode::ZeroElement, "factorize(0)");
  std::map<unsigned long long, int> out;
  unsigned long long m = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1 : static_cast<unsigned long long>(n);
  detail::factor_into(m, out);
  return out;
}

inline std::vector<long long> prime_divisors(long long n) {
  std::vector<long long> ps;
  for (auto [p, e] : factorize(n)) ps.push_back(static_cast<long long>(p));
  return ps;
}

/// Signed squarefree part: n = sqf * m^2.
inline long long squarefree_part(long long n) {
  if (n == 0) fail(ErrorCode::ZeroElement, "square class of 0");
  long long r = n < 0 ? -1 : 1;
  for (auto [p, e] : factorize(n)) {
    if (e % 2) r = checked_mul(r, static_cast<long long>(p));
  }
  return r;
}

inline long long squarefree_part(const BigInt& n) { return squarefree_part(to_ll(n)); }

/// Squarefree integer representing the class of q in Q*/Q*^2.
inline long long squarefree_part(const Rational& q) {
  if (q == 0) fail(ErrorCode::ZeroElement, "square class of 0");
  long long a = squarefree_part(num(q));
  long long b = squarefree_part(den(q));
  long long g = std::gcd(a, b);
  return checked_mul(a / g, b / g);
}

/// Product of two squarefree integers, reduced to its squarefree part.
inline long long sqf_mul(long long a, long long b) {
  long long g = std::gcd(a, b);
  if (g < 0) g = -g;
  return checked_mul(a / g, b / g);
}

inline int vp(long long n, long long p) {
  if (n == 0) fail(ErrorCode::ZeroElement, "valuation of 0");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline int vp(BigInt n, long long p) {
  if (n == 0) fail(ErrorCode::ZeroElement, "valuation of 0");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline int vp(const Rational& q, long long p) { return vp(num(q), p) - vp(den(q), p); }

/// Legendre symbol (a|p) for odd prime p; returns 0 when p | a.
inline int legendre(long long a, long long p) {
  long long r = mod_floor(a, p);
  if (r == 0) return 0;
  unsigned long long t = powmod(static_cast<unsigned long long>(r), static_cast<unsigned long long>((p - 1) / 2),
                                static_cast<unsigned long long>(p));
  return t == 1 ? 1 : -1;
}

inline int legendre(const BigInt& a, long long p) {
  BigInt r = a % p;
  if (r < 0) r += p;
  return legendre(static_cast<long long>(r), p);
}

/// A square root of a modulo odd prime p (Tonelli-Shanks). Requires (a|p) != -1.
inline long long sqrt_mod(long long a, long long p) {
  a = mod_floor(a, p);
  if (a == 0) return 0;
  if (p == 2) return a;
  if (legendre(a, p) != 1) fail(ErrorCode::PreconditionFailed, "non-residue in sqrt_mod");
  using u64 = unsigned long long;
  u64 P = static_cast<u64>(p);
  if (p % 4 == 3) return static_cast<long long>(powmod(static_cast<u64>(a), (P + 1) / 4, P));
  u64 q = P - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (legendre(static_cast<long long>(z), p) != -1) ++z;
  u64 m = static_cast<u64>(s), c = powmod(z, q, P), t = powmod(static_cast<u64>(a), q, P),
      r = powmod(static_cast<u64>(a), (q + 1) / 2, P);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, P);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, P);
    m = i;
    c = mulmod(b, b, P);
    t = mulmod(t, c, P);
    r = mulmod(r, b, P);
  }
  return static_cast<long long>(r);
}

inline bool is_perfect_square(const BigInt& n) {
  if (n < 0) return false;
  BigInt r = boost::multiprecision::sqrt(n);
  return r * r == n;
}

inline bool is_rational_square(const Rational& q) {
  return q > 0 && is_perfect_square(num(q)) && is_perfect_square(den(q));
}

/// Exact square root of a rational square.
inline Rational rational_sqrt(const Rational& q) {
  if (!is_rational_square(q)) fail(ErrorCode::PreconditionFailed, "not a rational square");
  return Rational(boost::multiprecision::sqrt(num(q)), boost::multiprecision::sqrt(den(q)));
}

inline BigInt babs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

inline std::string to_string(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

/// Least quadratic non-residue modulo the odd prime p.
inline long long least_nonresidue(long long p) {
  for (long long n = 2;; ++n) {
    if (legendre(n, p) == -1) return n;
  }
}

}  // namespace qfkit
