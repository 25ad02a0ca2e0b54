#pragma once

// Rational points on the norm conic x^2 - a y^2 = b over Q.

#include <optional>
#include <vector>

#include "qfkit/localglobal.hpp"

namespace qfkit {

struct ConicPoint {
  Rational x, y;
};

struct ConicResult {
  std::optional<ConicPoint> point;
  std::vector<long long> obstructions;  // places (0 = real) where (a,b) = -1
};

namespace detail {

inline BigInt bgcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

/// r with r^2 = a mod |b|, |r| <= |b|/2; b squarefree and a a square modulo every prime of b.
inline long long sqrt_mod_squarefree(long long a, long long b) {
  long long m = std::abs(b);
  __int128 r = 0, mod = 1;
  for (long long q : prime_divisors(m)) {
    long long am = mod_floor(a, q);
    long long s = am == 0 ? 0 : sqrt_mod(am, q);
    if (mod_floor(static_cast<long long>((static_cast<__int128>(s) * s) % q), q) != am)
      fail(ErrorCode::PreconditionFailed, "no square root in conic descent");
    // combine r mod `mod` with s mod q
    long long mm = static_cast<long long>(mod % q);
    long long inv = static_cast<long long>(powmod(static_cast<unsigned long long>(mm), static_cast<unsigned long long>(q - 2),
                                                  static_cast<unsigned long long>(q)));
    long long rq = static_cast<long long>(((r % q) + q) % q);
    long long t = mod_floor(static_cast<long long>((static_cast<__int128>(mod_floor(s - rq, q)) * inv) % q), q);
    r += mod * t;
    mod *= q;
  }
  long long rr = static_cast<long long>(r % m);
  if (rr > m / 2) rr -= m;
  return rr;
}

struct Triple {
  BigInt X, Y, Z;
};

/// Nontrivial solution of X^2 = a Y^2 + b Z^2 for squarefree a, b that is locally solvable everywhere.
inline Triple legendre_descent(long long a, long long b) {
  if (a == 1) return {1, 1, 0};
  if (b == 1) return {1, 0, 1};
  if (a + b == 0) return {0, 1, 1};
  if (std::abs(a) > std::abs(b)) {
    Triple t = legendre_descent(b, a);
    return {t.X, t.Z, t.Y};
  }
  long long r = sqrt_mod_squarefree(a, b);
  long long num_t = static_cast<long long>((static_cast<__int128>(r) * r - a) / b);
  if (num_t == 0) fail(ErrorCode::Degenerate, "descent hit a square");
  long long t0 = squarefree_part(num_t);
  long long k2 = num_t / t0;
  long long k = static_cast<long long>(std::llround(std::sqrt(static_cast<long double>(k2))));
  while (k * k > k2) --k;
  while ((k + 1) * (k + 1) <= k2) ++k;
  Triple s = legendre_descent(a, t0);
  Triple out{BigInt(r) * s.X + BigInt(a) * s.Y, s.X + BigInt(r) * s.Y, BigInt(t0) * k * s.Z};
  BigInt g = bgcd(bgcd(babs(out.X), babs(out.Y)), babs(out.Z));
  if (g > 1) {
    out.X /= g;
    out.Y /= g;
    out.Z /= g;
  }
  return out;
}

/// a = A * alpha^2 with A a squarefree integer.
inline std::pair<long long, Rational> split_square(const Rational& a) {
  long long A = squarefree_part(a);
  Rational alpha2 = a / Rational(A);
  return {A, rational_sqrt(alpha2)};
}

}  // namespace detail

/// Solve x^2 - a y^2 = b over Q. No point iff some Hilbert symbol (a,b)_v is -1.
inline ConicResult conic_solve(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) fail(ErrorCode::ZeroArgument, "conic with zero coefficient");
  ConicResult res;
  auto [A, alpha] = detail::split_square(a);
  auto [B, beta] = detail::split_square(b);
  for (long long v : hilbert_support(A, B))
    if (hilbert_Q(A, B, v) == -1) res.obstructions.push_back(v);
  if (!res.obstructions.empty()) return res;
  // small integral points first
  if (den(a) == 1 && den(b) == 1) {
    BigInt ai = num(a), bi = num(b);
    for (long long y = 0; y <= 64; ++y) {
      BigInt x2 = bi + ai * y * y;
      if (x2 >= 0 && is_perfect_square(x2)) {
        res.point = ConicPoint{Rational(boost::multiprecision::sqrt(x2)), Rational(y)};
        return res;
      }
    }
  }
  Rational x, y;
  if (A == 1) {
    // (x - alpha y)(x + alpha y) = b
    x = (1 + b) / 2;
    y = (b - 1) / (2 * alpha);
  } else {
    auto t = detail::legendre_descent(A, B);
    if (t.Z == 0) fail(ErrorCode::Degenerate, "descent returned a point at infinity");
    Rational xs = Rational(t.X) / Rational(t.Z), ys = Rational(t.Y) / Rational(t.Z);
    x = beta * xs;
    y = beta * ys / alpha;
  }
  if (x * x - a * y * y != b) fail(ErrorCode::Degenerate, "conic point failed verification");
  res.point = ConicPoint{x, y};
  return res;
}

inline std::optional<ConicPoint> conic_point(const Rational& a, const Rational& b) { return conic_solve(a, b).point; }

/// Is b a norm from Q(sqrt a) (a square classes allowed)?
inline bool is_norm_Q(const Rational& a, const Rational& b) {
  long long A = squarefree_part(a), B = squarefree_part(b);
  for (long long v : hilbert_support(A, B))
    if (hilbert_Q(A, B, v) == -1) return false;
  return true;
}

}  // namespace qfkit
