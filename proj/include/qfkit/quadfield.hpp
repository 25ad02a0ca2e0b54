#pragma once

// Elements of Q(sqrt d) and of multiquadratic algebras Q(sqrt g1,...,sqrt gk).

#include <string>
#include <vector>

#include "qfkit/arith.hpp"

namespace qfkit {

inline void require_quadratic_d(long long d) {
  if (d == 0 || d == 1 || squarefree_part(d) != d)
    fail(ErrorCode::BadDiscriminant, "d must be squarefree and not 0 or 1, got " + std::to_string(d));
}

/// x + y sqrt(d), d squarefree and not 1.
struct QuadElement {
  long long d = -1;
  Rational x = 0, y = 0;

  QuadElement() = default;
  QuadElement(long long d_, Rational x_, Rational y_ = 0) : d(d_), x(std::move(x_)), y(std::move(y_)) {}
  static QuadElement sqrt_d(long long d) { return QuadElement(d, 0, 1); }

  bool is_zero() const { return x == 0 && y == 0; }
  bool is_rational() const { return y == 0; }
  QuadElement conj() const { return QuadElement(d, x, -y); }
  Rational norm() const { return x * x - Rational(d) * y * y; }
  Rational trace() const { return 2 * x; }

  friend QuadElement operator+(const QuadElement& a, const QuadElement& b) { return {a.d, a.x + b.x, a.y + b.y}; }
  friend QuadElement operator-(const QuadElement& a, const QuadElement& b) { return {a.d, a.x - b.x, a.y - b.y}; }
  QuadElement operator-() const { return {d, -x, -y}; }
  friend QuadElement operator*(const QuadElement& a, const QuadElement& b) {
    return {a.d, a.x * b.x + Rational(a.d) * a.y * b.y, a.x * b.y + a.y * b.x};
  }
  friend QuadElement operator*(const Rational& c, const QuadElement& a) { return {a.d, c * a.x, c * a.y}; }
  QuadElement inverse() const {
    Rational n = norm();
    if (n == 0) fail(ErrorCode::ZeroElement, "inverse of zero in Q(sqrt d)");
    return {d, x / n, -y / n};
  }
  friend QuadElement operator/(const QuadElement& a, const QuadElement& b) { return a * b.inverse(); }
  friend bool operator==(const QuadElement& a, const QuadElement& b) { return a.x == b.x && a.y == b.y; }
  QuadElement pow(int k) const {
    QuadElement r(d, 1), b = k >= 0 ? *this : inverse();
    for (int i = 0; i < std::abs(k); ++i) r = r * b;
    return r;
  }

  std::string str() const {
    if (y == 0) return to_string(x);
    std::string s = x == 0 ? "" : to_string(x) + (y > 0 ? "+" : "");
    std::string r = "sqrt(" + std::to_string(d) + ")";
    if (y == 1) return s + r;
    if (y == -1) return s + "-" + r;
    return s + to_string(y) + "*" + r;
  }
};

/// Exact square test in Q(sqrt d).
inline bool is_square_quad(const QuadElement& z) {
  if (z.is_zero()) fail(ErrorCode::ZeroElement, "square test of zero");
  Rational n = z.norm();
  if (!is_rational_square(n)) return false;
  Rational r = rational_sqrt(n);
  for (const Rational& s : {r, Rational(-r)}) {
    Rational u2 = (z.x + s) / 2;
    if (u2 < 0 || (u2 != 0 && !is_rational_square(u2))) continue;
    Rational u = u2 == 0 ? Rational(0) : rational_sqrt(u2);
    if (u == 0) {
      // z = d v^2
      if (z.y != 0) continue;
      Rational v2 = z.x / Rational(z.d);
      if (v2 > 0 && is_rational_square(v2)) return true;
      continue;
    }
    Rational v = z.y / (2 * u);
    if (u * u + Rational(z.d) * v * v == z.x) return true;
  }
  return false;
}

/// Sign of x + y*sign*sqrt(d) for d > 0, exactly.
inline int real_sign(const QuadElement& z, int sign) {
  if (z.is_zero()) fail(ErrorCode::ZeroElement, "sign of zero");
  Rational y = sign > 0 ? z.y : Rational(-z.y);
  int sx = z.x > 0 ? 1 : (z.x < 0 ? -1 : 0);
  int sy = y > 0 ? 1 : (y < 0 ? -1 : 0);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  return (z.x * z.x > Rational(z.d) * y * y) ? sx : sy;
}

/// Element of Q[sqrt g1] x ... x Q[sqrt gk] (a field when the degree is 2^k).
/// coords[S] is the coefficient of prod_{i in S} sqrt(g_i), S a bitmask.
struct MultiQuadElement {
  std::vector<long long> gens;
  std::vector<Rational> coords;

  MultiQuadElement() : coords(1, Rational(0)) {}
  explicit MultiQuadElement(std::vector<long long> g, Rational c = 0)
      : gens(std::move(g)), coords(std::size_t(1) << gens.size(), Rational(0)) {
    coords[0] = std::move(c);
  }
  static MultiQuadElement basis(std::vector<long long> g, unsigned mask, Rational c = 1) {
    MultiQuadElement z(std::move(g));
    z.coords.at(mask) = std::move(c);
    return z;
  }

  std::size_t size() const { return coords.size(); }
  bool is_zero() const {
    for (const auto& c : coords)
      if (c != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < coords.size(); ++i)
      if (coords[i] != 0) return false;
    return true;
  }

  friend MultiQuadElement operator+(MultiQuadElement a, const MultiQuadElement& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a.coords[i] += b.coords[i];
    return a;
  }
  friend MultiQuadElement operator*(const MultiQuadElement& a, const MultiQuadElement& b) {
    MultiQuadElement r(a.gens);
    for (std::size_t s = 0; s < a.size(); ++s) {
      if (a.coords[s] == 0) continue;
      for (std::size_t t = 0; t < b.size(); ++t) {
        if (b.coords[t] == 0) continue;
        Rational c = a.coords[s] * b.coords[t];
        std::size_t both = s & t;
        for (std::size_t i = 0; i < a.gens.size(); ++i)
          if (both >> i & 1) c *= a.gens[i];
        r.coords[s ^ t] += c;
      }
    }
    return r;
  }
  /// Automorphism sqrt(g_i) -> (-1)^{c_i} sqrt(g_i).
  MultiQuadElement conjugate(unsigned c) const {
    MultiQuadElement r = *this;
    for (std::size_t s = 0; s < size(); ++s)
      if (__builtin_popcount(static_cast<unsigned>(s) & c) % 2) r.coords[s] = -r.coords[s];
    return r;
  }
  /// Norm down to Q: the product of all conjugates.
  Rational norm() const {
    MultiQuadElement r(gens, 1);
    for (unsigned c = 0; c < size(); ++c) r = r * conjugate(c);
    if (!r.is_rational()) fail(ErrorCode::Degenerate, "norm is not rational");
    return r.coords[0];
  }

  std::string str() const {
    std::string s;
    for (std::size_t m = 0; m < size(); ++m) {
      if (coords[m] == 0) continue;
      if (!s.empty()) s += " + ";
      s += to_string(coords[m]);
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (m >> i & 1) s += "*sqrt(" + std::to_string(gens[i]) + ")";
    }
    return s.empty() ? "0" : s;
  }
};

}  // namespace qfkit
