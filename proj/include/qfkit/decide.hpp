#pragma once

// Residue recursion over Laurent towers and field dispatch for the basic
// decisions (anisotropic dimension, hyperbolicity, similarity factors).

#include "qfkit/form.hpp"
#include "qfkit/functionfield.hpp"
#include "qfkit/localglobal.hpp"

namespace qfkit {

/// phi = phi1 + t phi2 at the last Laurent step; both parts live over the field below.
struct ResidueDecomposition {
  QuadForm unit_part;
  QuadForm t_part;
};

inline ResidueDecomposition springer_decompose(const QuadForm& phi) {
  if (phi.field.is_base()) fail(ErrorCode::UndecidableLayer, "no Laurent step to decompose");
  FieldTower below = phi.field.drop_last();
  ResidueDecomposition r{QuadForm(below), QuadForm(below)};
  for (const auto& e : phi.entries) {
    SquareClass c = e;
    int top = c.exps.back();
    c.exps.pop_back();
    (top ? r.t_part : r.unit_part).entries.push_back(c);
  }
  return r;
}

inline int anisotropic_dim(const QuadForm& phi) {
  const auto& k = phi.field;
  if (k.is_base()) {
    switch (k.base) {
      case BaseKind::Rationals: return anisotropic_dim_Q(phi);
      case BaseKind::PrimeField: return anisotropic_dim_Fp(phi);
      case BaseKind::RationalFunction:
        // binary and smaller forms only: <x,y> is isotropic iff -xy is a square
        if (phi.dim() == 0 || phi.dim() == 1) return static_cast<int>(phi.dim());
        if (phi.dim() == 2) return negate(mul(phi[0], phi[1], k), k).is_one() ? 0 : 2;
        fail(ErrorCode::UndecidableLayer, "anisotropic dimension over Q(s) is decided only in dimension <= 2");
    }
  }
  auto r = springer_decompose(phi);
  return anisotropic_dim(r.unit_part) + anisotropic_dim(r.t_part);
}

inline bool is_hyperbolic(const QuadForm& phi) {
  if (phi.dim() % 2) return false;
  const auto& k = phi.field;
  if (k.is_base()) {
    if (k.base == BaseKind::RationalFunction) return is_hyperbolic_Qs(phi);
    return anisotropic_dim(phi) == 0;
  }
  auto r = springer_decompose(phi);
  return is_hyperbolic(r.unit_part) && is_hyperbolic(r.t_part);
}

inline std::size_t witt_index(const QuadForm& phi) {
  return (phi.dim() - static_cast<std::size_t>(anisotropic_dim(phi))) / 2;
}

inline bool is_isotropic(const QuadForm& phi) { return anisotropic_dim(phi) < static_cast<int>(phi.dim()); }
inline bool is_anisotropic(const QuadForm& phi) { return !is_isotropic(phi); }

inline std::size_t witt_index_tower(const QuadForm& phi) { return witt_index(phi); }
inline bool is_hyperbolic_tower(const QuadForm& phi) { return is_hyperbolic(phi); }
inline bool is_anisotropic_tower(const QuadForm& phi) { return is_anisotropic(phi); }

/// Hyperbolicity over K(sqrt g_1, ..., sqrt g_m) with rational g_i and K a Laurent tower over Q (unramified extension).
inline bool is_hyperbolic_unramified(const QuadForm& phi, const std::vector<long long>& gens) {
  const auto& k = phi.field;
  if (k.base != BaseKind::Rationals) fail(ErrorCode::UnsupportedField, "unramified extensions by rational roots need base Q");
  if (k.is_base()) return is_hyperbolic_multiquad(phi, gens);
  auto d = springer_decompose(phi);
  return is_hyperbolic_unramified(d.unit_part, gens) && is_hyperbolic_unramified(d.t_part, gens);
}

/// a is a similarity factor of phi iff <1,-a> x phi is hyperbolic.
inline bool in_G(const SquareClass& a, const QuadForm& phi) {
  QuadForm b(phi.field);
  b.entries = {one_class(phi.field), negate(canonical_square_class(a, phi.field), phi.field)};
  return is_hyperbolic(tensor(b, phi));
}

inline bool in_G(const MonomialElement& a, const QuadForm& phi) { return in_G(canonical_square_class(a, phi.field), phi); }

inline bool in_G_tuple(const SquareClass& a, const std::vector<QuadForm>& phis) {
  for (const auto& f : phis)
    if (!in_G(a, f)) return false;
  return true;
}

/// Does phi represent c? Equivalent to isotropy of phi + <-c>.
inline bool represents(const QuadForm& phi, const SquareClass& c) {
  QuadForm f = phi;
  f.entries.push_back(negate(canonical_square_class(c, phi.field), phi.field));
  return is_isotropic(f);
}

/// The form over K(sqrt g) for g with an odd exponent: the last odd step t_k is
/// replaced by a new uniformizer w with w^2 = g, and t_k = (g/t_k) modulo squares.
struct RamifiedExtension {
  FieldTower tower;
  QuadForm form;
  std::size_t step = 0;
};

inline RamifiedExtension adjoin_ramified_root(const QuadForm& phi, const SquareClass& g0) {
  const FieldTower& k = phi.field;
  SquareClass g = canonical_square_class(g0, k);
  int last = -1;
  for (std::size_t i = 0; i < g.exps.size(); ++i)
    if (g.exps[i]) last = static_cast<int>(i);
  if (last < 0) fail(ErrorCode::UnsupportedExponent, "every exponent coordinate is even");
  std::size_t s = static_cast<std::size_t>(last);
  SquareClass rest = g;
  rest.exps[s] = 0;
  RamifiedExtension out;
  out.step = s;
  out.tower = k;
  out.tower.steps[s] = k.steps[s] + "'";
  out.tower.validate();
  out.form = QuadForm(out.tower);
  for (const auto& e : phi.entries) {
    SquareClass c = e;
    if (c.exps[s]) {
      c.exps[s] = 0;
      c = mul(c, rest, k);
    }
    out.form.entries.push_back(c);
  }
  return out;
}

inline bool is_hyperbolic_over_ramified(const QuadForm& phi, const SquareClass& g) {
  return is_hyperbolic(adjoin_ramified_root(phi, g).form);
}

}  // namespace qfkit
