#pragma once

// Local-global decisions over Q, over multiquadratic extensions of Q for
// forms with rational entries, and over finite fields.
// Rational places are encoded as a long long: 0 is the real place, p > 0 a prime.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "qfkit/form.hpp"

namespace qfkit {

namespace detail {

inline int eps2(long long u) { return static_cast<int>(mod_floor((u - 1) / 2, 2)); }
inline int omega2(long long u) {
  long long r = mod_floor(u, 8);
  return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace detail

/// Hilbert symbol (a,b)_p over Q_p (p = 0: over R) for squarefree integers.
inline int hilbert_Q(long long a, long long b, long long p) {
  if (a == 0 || b == 0) fail(ErrorCode::ZeroArgument, "Hilbert symbol of zero");
  a = squarefree_part(a);
  b = squarefree_part(b);
  if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
  int al = a % p == 0 ? 1 : 0, be = b % p == 0 ? 1 : 0;
  long long u = al ? a / p : a, v = be ? b / p : b;
  if (p == 2) {
    int e = detail::eps2(u) * detail::eps2(v) + al * detail::omega2(v) + be * detail::omega2(u);
    return e % 2 ? -1 : 1;
  }
  int r = 1;
  if (al && be && ((p - 1) / 2) % 2) r = -r;
  if (be) r *= legendre(u, p);
  if (al) r *= legendre(v, p);
  return r;
}

inline int hilbert_Q(const Rational& a, const Rational& b, long long p) {
  if (a == 0 || b == 0) fail(ErrorCode::ZeroArgument, "Hilbert symbol of zero");
  return hilbert_Q(squarefree_part(a), squarefree_part(b), p);
}

/// Places where (a,b) can be nontrivial: 0 (real), 2 and odd primes dividing a or b.
inline std::vector<long long> hilbert_support(long long a, long long b) {
  std::set<long long> s{0, 2};
  for (long long x : {a, b})
    for (long long q : prime_divisors(squarefree_part(x))) s.insert(q);
  return {s.begin(), s.end()};
}

/// Primes that matter for a rational form: 2 and odd primes dividing entries (and extra elements).
inline std::vector<long long> support_primes(const std::vector<long long>& xs, const std::vector<long long>& extra = {}) {
  std::set<long long> s{2};
  for (const auto* v : {&xs, &extra})
    for (long long x : *v)
      for (long long q : prime_divisors(squarefree_part(x))) s.insert(q);
  return {s.begin(), s.end()};
}

/// Hasse invariant prod_{i<j} (a_i,a_j)_p.
inline int hasse_Q(const std::vector<long long>& xs, long long p) {
  int s = 1;
  long long prefix = 1;
  for (long long x : xs) {
    if (prefix != 1) s *= hilbert_Q(prefix, x, p);
    prefix = sqf_mul(prefix, x);
  }
  return s;
}

inline long long product_class(const std::vector<long long>& xs) {
  long long d = 1;
  for (long long x : xs) d = sqf_mul(d, x);
  return d;
}

inline int signature_Q(const std::vector<long long>& xs) {
  int s = 0;
  for (long long x : xs) s += x > 0 ? 1 : -1;
  return s;
}

/// Class of a squarefree integer in Q_p*/Q_p*^2 as a small code.
inline int local_class_code(long long a, long long p) {
  a = squarefree_part(a);
  if (p == 0) return a > 0 ? 0 : 1;
  int v = a % p == 0 ? 1 : 0;
  long long u = v ? a / p : a;
  if (p == 2) return v * 8 + static_cast<int>(mod_floor(u, 8));
  return v * 2 + (legendre(u, p) == 1 ? 0 : 1);
}

inline bool is_local_square(long long a, long long p) {
  a = squarefree_part(a);
  return local_class_code(a, p) == local_class_code(1, p);
}

namespace detail {

/// Is there a form over Q_p of dimension m with determinant det and Hasse invariant s?
inline bool realizable_Qp(int m, long long det, int s, long long p) {
  if (m == 0) return is_local_square(det, p) && s == 1;
  if (m == 1) return s == 1;
  if (m == 2) return !is_local_square(-det, p) || s == 1;
  return true;
}

}  // namespace detail

/// Dimension of the anisotropic part of the form over Q_p (p = 0: over R).
inline int local_anisotropic_dim_Q(const std::vector<long long>& xs, long long p) {
  int n = static_cast<int>(xs.size());
  if (p == 0) return std::abs(signature_Q(xs));
  long long det = product_class(xs);
  int s = hasse_Q(xs, p);
  for (int m = n % 2; m < n; m += 2) {
    int k = (n - m) / 2;
    long long detpsi = (k % 2) ? -det : det;
    detpsi = squarefree_part(detpsi);
    int spsi = s;
    if ((k * (k - 1) / 2) % 2) spsi *= hilbert_Q(-1, -1, p);
    if (k % 2) spsi *= hilbert_Q(detpsi, -1, p);
    if (detail::realizable_Qp(m, detpsi, spsi, p)) return m;
  }
  return n;
}

inline int anisotropic_dim_Q(const std::vector<long long>& xs) {
  int m = local_anisotropic_dim_Q(xs, 0);
  for (long long p : support_primes(xs)) m = std::max(m, local_anisotropic_dim_Q(xs, p));
  return m;
}

inline int anisotropic_dim_Q(const QuadForm& f) { return anisotropic_dim_Q(rational_entries(f)); }
inline bool is_isotropic_Q(const QuadForm& f) { return anisotropic_dim_Q(f) < static_cast<int>(f.dim()); }
inline bool is_hyperbolic_Q(const QuadForm& f) { return anisotropic_dim_Q(f) == 0; }
inline std::size_t witt_index_Q(const QuadForm& f) { return (f.dim() - anisotropic_dim_Q(f)) / 2; }

/// Local invariants over Q.
struct LocalInvariants {
  std::size_t dim = 0;
  SquareClass disc;
  std::map<long long, int> hasse;       // nontrivial finite-support values, place code -> -1
  std::map<long long, int> signatures;  // place code 0 -> signature
};

inline LocalInvariants local_invariants_Q(const QuadForm& f) {
  auto xs = rational_entries(f);
  LocalInvariants li;
  li.dim = f.dim();
  li.disc = discriminant(f);
  li.signatures[0] = signature_Q(xs);
  std::vector<long long> places{0};
  for (long long p : support_primes(xs)) places.push_back(p);
  for (long long p : places) {
    int s = hasse_Q(xs, p);
    if (s == -1) li.hasse[p] = -1;
  }
  return li;
}

// ---------------------------------------------------------------------------
// Multiquadratic extensions L = Q(sqrt g1, ..., sqrt gr), forms with rational entries.

/// The subgroup of Q_p*/Q_p*^2 spanned by the generators, as class codes.
inline std::set<int> local_span(const std::vector<long long>& gens, long long p) {
  std::set<long long> span{1};
  for (long long g : gens) {
    std::set<long long> add;
    for (long long h : span) add.insert(sqf_mul(h, g));
    span.insert(add.begin(), add.end());
  }
  std::set<int> codes;
  for (long long h : span) codes.insert(local_class_code(h, p));
  return codes;
}

/// Is the rational x a square in Q(sqrt g1,...,sqrt gr)?
inline bool is_square_in_multiquad(long long x, const std::vector<long long>& gens) {
  std::set<long long> span{1};
  for (long long g : gens) {
    std::set<long long> add;
    for (long long h : span) add.insert(sqf_mul(h, g));
    span.insert(add.begin(), add.end());
  }
  return span.count(squarefree_part(x)) > 0;
}

/// Anisotropic dimension of the completion of phi at a place of L over p.
inline int local_anisotropic_dim_multiquad(const std::vector<long long>& xs, const std::vector<long long>& gens,
                                           long long p) {
  int n = static_cast<int>(xs.size());
  if (p == 0) {
    bool real = std::all_of(gens.begin(), gens.end(), [](long long g) { return g > 0; });
    return real ? std::abs(signature_Q(xs)) : n % 2;
  }
  auto span = local_span(gens, p);
  if (span.size() == 1) return local_anisotropic_dim_Q(xs, p);
  if (n % 2) return 1;
  long long disc = product_class(xs);
  if ((n / 2) % 2) disc = -disc;
  return span.count(local_class_code(disc, p)) ? 0 : 2;
}

inline int anisotropic_dim_multiquad(const std::vector<long long>& xs, const std::vector<long long>& gens) {
  int n = static_cast<int>(xs.size());
  int m = local_anisotropic_dim_multiquad(xs, gens, 0);
  for (long long p : support_primes(xs, gens)) m = std::max(m, local_anisotropic_dim_multiquad(xs, gens, p));
  if (n % 2 == 0) {
    long long disc = product_class(xs);
    if ((n / 2) % 2) disc = -disc;
    if (!is_square_in_multiquad(disc, gens)) m = std::max(m, 2);
  }
  return m;
}

inline bool is_hyperbolic_multiquad(const QuadForm& f, const std::vector<long long>& gens) {
  return anisotropic_dim_multiquad(rational_entries(f), gens) == 0;
}

inline std::size_t witt_index_multiquad(const QuadForm& f, const std::vector<long long>& gens) {
  return (f.dim() - anisotropic_dim_multiquad(rational_entries(f), gens)) / 2;
}

// ---------------------------------------------------------------------------
// Finite fields.

inline int anisotropic_dim_Fp(const QuadForm& f) {
  std::size_t n = f.dim();
  if (n % 2) return 1;
  if (n == 0) return 0;
  return discriminant(f).is_one() ? 0 : 2;
}

inline bool is_isotropic_Fp(const QuadForm& f) {
  if (f.field.base != BaseKind::PrimeField || !f.field.is_base()) fail(ErrorCode::UnsupportedField, "form is not over F_p");
  if (f.dim() >= 3) return true;
  if (f.dim() < 2) return false;
  return negate(determinant(f), f.field).is_one();
}

}  // namespace qfkit
