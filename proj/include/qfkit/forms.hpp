#pragma once

// Classical invariants beyond the discriminant: Clifford class, isometry, I^n membership, height bounds.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfkit/decide.hpp"

namespace qfkit {

using Symbol = std::pair<SquareClass, SquareClass>;

/// A 2-torsion Brauer class, stored as a sum of quaternion symbols.
struct BrauerClass2 {
  FieldTower field;
  std::vector<Symbol> symbols;
  std::map<long long, int> local;  // over Q: places (0 = real) with invariant 1/2

  bool has_local() const { return field.base == BaseKind::Rationals && field.is_base(); }
};

namespace detail {

inline void require_brauer_layer(const FieldTower& k) {
  if (k.base == BaseKind::RationalFunction) fail(ErrorCode::UnsupportedField, "Brauer classes over Q(s) are not supported");
}

inline SquareClass strip_top(const SquareClass& c) {
  SquareClass r = c;
  r.exps.pop_back();
  return r;
}

// Triviality of a sum of symbols, peeling Laurent steps via the residue Br(k((t)))[2] = Br(k)[2] + k*/k*^2.
inline bool brauer_trivial(const std::vector<Symbol>& syms, const FieldTower& k) {
  if (k.is_base()) {
    if (k.base == BaseKind::PrimeField) return true;
    std::set<long long> places{0, 2};
    for (const auto& [a, b] : syms)
      for (long long x : {a.rat(), b.rat()})
        for (long long p : prime_divisors(x)) places.insert(p);
    for (long long p : places) {
      int s = 1;
      for (const auto& [a, b] : syms) s *= hilbert_Q(a.rat(), b.rat(), p);
      if (s != 1) return false;
    }
    return true;
  }
  FieldTower below = k.drop_last();
  std::vector<Symbol> units;
  SquareClass res = one_class(below);
  for (const auto& [a, b] : syms) {
    int al = a.top_exp(), be = b.top_exp();
    SquareClass u = strip_top(a), v = strip_top(b);
    units.emplace_back(u, v);
    if (al) res = mul(res, v, below);
    if (be) res = mul(res, u, below);
    if (al && be) res = negate(res, below);
  }
  return res.is_one() && brauer_trivial(units, below);
}

inline std::map<long long, int> local_brauer_Q(const std::vector<Symbol>& syms) {
  std::set<long long> places{0, 2};
  for (const auto& [a, b] : syms)
    for (long long x : {a.rat(), b.rat()})
      for (long long p : prime_divisors(x)) places.insert(p);
  std::map<long long, int> out;
  for (long long p : places) {
    int s = 1;
    for (const auto& [a, b] : syms) s *= hilbert_Q(a.rat(), b.rat(), p);
    if (s == -1) out[p] = 1;
  }
  return out;
}

}  // namespace detail

inline BrauerClass2 make_brauer(const FieldTower& k, std::vector<Symbol> syms) {
  detail::require_brauer_layer(k);
  BrauerClass2 b{k, {}, {}};
  for (auto& [a, c] : syms) {
    SquareClass x = canonical_square_class(a, k), y = canonical_square_class(c, k);
    if (x.is_one() || y.is_one()) continue;
    if (negate(x, k) == y) continue;
    if (detail::brauer_trivial({{x, y}}, k)) continue;
    b.symbols.emplace_back(x, y);
  }
  if (b.has_local()) b.local = detail::local_brauer_Q(b.symbols);
  return b;
}

inline bool is_trivial(const BrauerClass2& b) { return detail::brauer_trivial(b.symbols, b.field); }

inline BrauerClass2 brauer_sum(const BrauerClass2& a, const BrauerClass2& b) {
  require_same_field(a.field, b.field);
  auto s = a.symbols;
  s.insert(s.end(), b.symbols.begin(), b.symbols.end());
  return make_brauer(a.field, s);
}

inline bool brauer_equal(const BrauerClass2& a, const BrauerClass2& b) { return is_trivial(brauer_sum(a, b)); }

/// Hasse-Witt invariant sum_{i<j} (a_i, a_j).
inline BrauerClass2 hasse_witt(const QuadForm& phi) {
  std::vector<Symbol> s;
  for (std::size_t i = 0; i < phi.dim(); ++i)
    for (std::size_t j = i + 1; j < phi.dim(); ++j) s.emplace_back(phi[i], phi[j]);
  return make_brauer(phi.field, s);
}

/// Brauer class of the Clifford algebra: Hasse-Witt corrected by dim mod 8 and the determinant.
inline BrauerClass2 clifford_class(const QuadForm& phi) {
  const auto& k = phi.field;
  detail::require_brauer_layer(k);
  std::vector<Symbol> s;
  for (std::size_t i = 0; i < phi.dim(); ++i)
    for (std::size_t j = i + 1; j < phi.dim(); ++j) s.emplace_back(phi[i], phi[j]);
  SquareClass m1 = class_of(-1, k), d = determinant(phi);
  switch (phi.dim() % 8) {
    case 3:
    case 4: s.emplace_back(m1, negate(d, k)); break;
    case 5:
    case 6: s.emplace_back(m1, m1); break;
    case 7:
    case 0: s.emplace_back(m1, d); break;
    default: break;
  }
  return make_brauer(k, s);
}

inline bool is_isometric(const QuadForm& a, const QuadForm& b) {
  require_same_field(a.field, b.field);
  if (a.dim() != b.dim()) return false;
  return is_hyperbolic(orthogonal_sum(a, negate(b)));
}

enum class Tri { Yes, No, Unknown };

inline std::string to_string(Tri t) { return t == Tri::Yes ? "yes" : t == Tri::No ? "no" : "unknown"; }

/// Explicit Witt equivalence phi ~ sum_i c_i * <<a_i1, ..., a_im>> with every m >= n.
struct InWitness {
  std::vector<std::pair<MonomialElement, std::vector<MonomialElement>>> terms;
};

inline QuadForm witness_form(const InWitness& w, const FieldTower& k) {
  QuadForm acc(k);
  for (const auto& [c, as] : w.terms) acc = orthogonal_sum(acc, scale(c, pfister(as, k)));
  return acc;
}

inline bool check_in_witness(const QuadForm& phi, const InWitness& w, int n) {
  for (const auto& t : w.terms)
    if (static_cast<int>(t.second.size()) < n) return false;
  QuadForm s = witness_form(w, phi.field);
  return is_hyperbolic(orthogonal_sum(phi, negate(s)));
}

inline Tri in_In(const QuadForm& phi, int n, const std::optional<InWitness>& witness = std::nullopt) {
  if (n < 1) fail(ErrorCode::Degenerate, "in_In needs n >= 1");
  if (phi.dim() % 2) return Tri::No;
  if (n == 1) return Tri::Yes;
  if (!discriminant(phi).is_one()) return Tri::No;
  if (n == 2) return Tri::Yes;
  // no Clifford invariant over Q(s)-based fields: only witnesses decide
  if (phi.field.base != BaseKind::RationalFunction && !is_trivial(clifford_class(phi))) return Tri::No;
  if (n == 3 && phi.field.base != BaseKind::RationalFunction) return Tri::Yes;
  if (is_hyperbolic(phi)) return Tri::Yes;
  if (witness && check_in_witness(phi, *witness, n)) return Tri::Yes;
  return Tri::Unknown;
}

inline bool karpenko_bound(long long dim, int n, int h) {
  if (n < 0 || h < 0 || 2LL * h > dim) fail(ErrorCode::Degenerate, "karpenko_bound needs n >= 0 and 0 <= h <= dim/2");
  return dim >= ((1LL << h) - 1) * (1LL << (n + 1 - h));
}

/// h(phi) <= 1: phi is hyperbolic or Witt equivalent to a scaled m-fold Pfister form.
inline Tri height_le1(const QuadForm& phi) {
  int a = anisotropic_dim(phi);
  if (a == 0) return Tri::Yes;
  if (a & (a - 1)) return Tri::No;
  int m = 0;
  while ((1 << m) < a) ++m;
  if (m == 0) return Tri::No;
  return in_In(phi, m);
}

/// Symmetric Gauss elimination of a Gram matrix over Q or F_p.
inline QuadForm diagonalize_gram(std::vector<std::vector<Rational>> g, const FieldTower& k) {
  if (!k.is_base() || k.base == BaseKind::RationalFunction)
    fail(ErrorCode::UnsupportedField, "Gram input is accepted over Q and F_p");
  std::size_t n = g.size();
  for (const auto& r : g)
    if (r.size() != n) fail(ErrorCode::Degenerate, "Gram matrix is not square");
  auto red = [&](Rational x) -> Rational {
    if (k.base != BaseKind::PrimeField) return x;
    if (x == 0) return 0;
    BigInt d = den(x) % k.p;
    if (d == 0) fail(ErrorCode::Degenerate, "entry has denominator divisible by p");
    BigInt nn = num(x) % k.p;
    if (nn == 0) return 0;
    return Rational(detail::fp_reduce(x, k.p));
  };
  auto inv = [&](const Rational& x) -> Rational {
    if (k.base != BaseKind::PrimeField) return 1 / x;
    return Rational(static_cast<long long>(powmod(static_cast<unsigned long long>(to_ll(num(x))),
                                                  static_cast<unsigned long long>(k.p - 2), static_cast<unsigned long long>(k.p))));
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (g[i][j] != g[j][i]) fail(ErrorCode::Degenerate, "Gram matrix is not symmetric");
      g[i][j] = red(g[i][j]);
    }
  std::vector<MonomialElement> diag;
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i][i] == 0) {
      std::size_t j = i + 1;
      while (j < n && g[i][j] == 0) ++j;
      if (j == n) fail(ErrorCode::Degenerate, "Gram matrix is singular");
      // e_i <- e_i + e_j (or e_i - e_j) makes the pivot nonzero when 2 is invertible
      Rational sgn = red(g[j][j] + 2 * g[i][j]) != 0 ? Rational(1) : Rational(-1);
      for (std::size_t c = 0; c < n; ++c) g[i][c] = red(g[i][c] + sgn * g[j][c]);
      for (std::size_t r = 0; r < n; ++r) g[r][i] = red(g[r][i] + sgn * g[r][j]);
    }
    Rational piv = g[i][i], pinv = inv(piv);
    diag.emplace_back(BaseElement(piv));
    for (std::size_t r = i + 1; r < n; ++r) {
      Rational f = red(g[r][i] * pinv);
      if (f == 0) continue;
      for (std::size_t c = i; c < n; ++c) g[r][c] = red(g[r][c] - f * g[i][c]);
      for (std::size_t c = i; c < n; ++c) g[c][r] = g[r][c];
    }
  }
  return QuadForm(k, diag);
}

}  // namespace qfkit
