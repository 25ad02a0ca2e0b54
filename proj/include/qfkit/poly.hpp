#pragma once

// Dense univariate polynomials over Q, and factorization of integer
// polynomials into primitive irreducibles (rational roots + Kronecker).

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfkit/arith.hpp"

namespace qfkit {

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(const Rational& constant) {  // NOLINT: implicit constant lift
    if (constant != 0) c_.push_back(constant);
  }
  Poly(long long constant) : Poly(Rational(constant)) {}  // NOLINT

  static Poly x() { return Poly(std::vector<Rational>{0, 1}); }
  static Poly monomial(const Rational& c, int deg) {
    std::vector<Rational> v(static_cast<std::size_t>(deg) + 1, Rational(0));
    v.back() = c;
    return Poly(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Rational(0);
  }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(v));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  /// Total order (degree first, then coefficients from the top) for use as map keys.
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;) {
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    }
    return false;
  }

  /// Euclidean division: *this = q*d + r with deg r < deg d.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) fail(ErrorCode::ZeroElement, "polynomial division by zero");
    Poly r = *this, q;
    while (!r.is_zero() && r.degree() >= d.degree()) {
      Poly t = monomial(r.lead() / d.lead(), r.degree() - d.degree());
      q += t;
      r = r - t * d;
    }
    return {q, r};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

  Rational eval(const Rational& x) const {
    Rational r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  Poly derivative() const {
    std::vector<Rational> v;
    for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * static_cast<long long>(i));
    return Poly(std::move(v));
  }

  /// Rational c with *this = c * primitive_part(), the latter integral,
  /// content 1 and positive leading coefficient.
  Rational content() const {
    if (is_zero()) return 0;
    BigInt l = 1;
    for (const auto& a : c_) l = boost::multiprecision::lcm(l, den(a));
    BigInt g = 0;
    for (const auto& a : c_) g = boost::multiprecision::gcd(g, num(a * l));
    Rational c(g, l);
    return lead() < 0 ? Rational(-c) : c;
  }
  Poly primitive_part() const {
    if (is_zero()) return Poly();
    Rational c = content();
    Poly r = *this;
    for (auto& a : r.c_) a /= c;
    return r;
  }
  bool is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& a) { return den(a) == 1; });
  }

  std::string str(const std::string& var = "s") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const Rational& a = c_[i];
      if (a == 0) continue;
      Rational m = a < 0 ? Rational(-a) : a;
      if (out.empty()) {
        if (a < 0) out += "-";
      } else {
        out += a < 0 ? "-" : "+";
      }
      bool unit = (m == 1);
      if (!unit || i == 0) out += to_string(m);
      if (i > 0) {
        if (!unit) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline Poly pow(const Poly& p, int e) {
  Poly r(1);
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.primitive_part();
}

/// Irreducible factorization result: f = unit * prod factors[i]^mult[i].
struct PolyFactorization {
  Rational unit;
  std::vector<std::pair<Poly, int>> factors;  // primitive, positive leading coefficient
};

namespace detail {

inline std::vector<long long> divisors_abs(long long n) {
  std::vector<long long> ds{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t sz = ds.size();
    long long pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk = checked_mul(pk, static_cast<long long>(p));
      for (std::size_t i = 0; i < sz; ++i) ds.push_back(checked_mul(ds[i], pk));
    }
  }
  return ds;
}

inline Poly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  Poly out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Poly term(ys[i]);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      term *= Poly(std::vector<Rational>{-xs[j], 1});
      term *= Poly(Rational(1) / (xs[i] - xs[j]));
    }
    out += term;
  }
  return out;
}

/// A proper factor of the primitive integer polynomial g of degree exactly k, if one exists.
inline std::optional<Poly> kronecker_factor(const Poly& g, int k) {
  std::vector<Rational> xs, ys;
  std::vector<std::vector<long long>> cand;
  long long total = 1;
  for (long long x = 0; static_cast<int>(xs.size()) <= k; x = x <= 0 ? 1 - x : -x) {
    Rational v = g.eval(x);
    if (v == 0) continue;
    xs.push_back(x);
    std::vector<long long> ds;
    for (long long d : divisors_abs(to_ll(num(v)))) {
      ds.push_back(d);
      ds.push_back(-d);
    }
    total *= static_cast<long long>(ds.size());
    if (total > 2'000'000) fail(ErrorCode::UnsupportedField, "polynomial too large to factor: " + g.str());
    cand.push_back(std::move(ds));
  }
  std::vector<std::size_t> idx(cand.size(), 0);
  while (true) {
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < idx.size(); ++i) vals.push_back(cand[i][idx[i]]);
    Poly h = interpolate(xs, vals);
    if (h.degree() == k && h.is_integral() && h.lead() > 0) {
      auto [q, r] = g.divmod(h);
      if (r.is_zero() && q.is_integral()) return h;
    }
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == cand[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return std::nullopt;
}

}  // namespace detail

/// Factorization of f over Z[s] into primitive irreducible factors with positive leading
/// coefficients. Degrees above 8 are rejected.
inline PolyFactorization factor(const Poly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroElement, "factor(0)");
  PolyFactorization out;
  out.unit = f.content();
  Poly g = f.primitive_part();
  if (g.degree() > 8) fail(ErrorCode::UnsupportedField, "polynomial degree above 8: " + g.str());
  std::map<Poly, int> found;
  auto pull = [&](const Poly& h) {
    while (true) {
      auto [q, r] = g.divmod(h);
      if (!r.is_zero()) break;
      g = q.primitive_part();
      out.unit *= q.content();
      ++found[h];
    }
  };
  // Rational roots p/q with p | a0, q | an.
  while (g.degree() >= 1 && g.coeff(0) == 0) pull(Poly::x());
  if (g.degree() >= 1) {
    auto ps = detail::divisors_abs(to_ll(num(g.coeff(0))));
    auto qs = detail::divisors_abs(to_ll(num(g.lead())));
    for (long long q : qs) {
      for (long long p : ps) {
        for (long long sgn : {1LL, -1LL}) {
          if (g.degree() < 1) break;
          Rational root(sgn * p, q);
          if (g.eval(root) == 0) pull(Poly(std::vector<Rational>{-root * q, Rational(q)}).primitive_part());
        }
      }
    }
  }
  for (int k = 2; 2 * k <= g.degree(); ++k) {
    while (2 * k <= g.degree()) {
      auto h = detail::kronecker_factor(g, k);
      if (!h) break;
      pull(*h);
    }
  }
  if (g.degree() >= 1) ++found[g];
  // g was made primitive with positive lead at each step; the remaining unit was tracked.
  for (auto& [p, m] : found) out.factors.emplace_back(p, m);
  return out;
}

inline bool is_irreducible(const Poly& f) {
  auto fz = factor(f);
  return fz.factors.size() == 1 && fz.factors[0].second == 1;
}

}  // namespace qfkit
