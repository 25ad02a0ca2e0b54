#pragma once

// Second residues over Q(s), hyperbolicity over Q(s), and the generator of
// multiquadratic extensions with a nontrivial norm obstruction.

#include <optional>
#include <string>
#include <vector>

#include "qfkit/conic.hpp"
#include "qfkit/form.hpp"
#include "qfkit/quadlocal.hpp"

namespace qfkit {

/// A diagonal form over a residue field: Q when D == 1, else Q(sqrt D).
struct ResidueForm {
  long long D = 1;
  std::vector<QuadElement> entries;

  std::size_t dim() const { return entries.size(); }
  std::string str() const {
    std::string s = "<";
    for (std::size_t i = 0; i < entries.size(); ++i) s += (i ? "," : "") + entries[i].str();
    return s + ">";
  }
};

inline Place poly_place(const Poly& f) {
  Place v;
  v.kind = Place::Kind::PolyPlace;
  v.poly = f;
  return v;
}

inline Place degree_place() {
  Place v;
  v.kind = Place::Kind::DegreePlace;
  return v;
}

namespace detail {

struct ResidueField {
  long long D = 1;
  QuadElement theta;  // a root of the place polynomial
};

inline ResidueField residue_field(const Poly& f) {
  ResidueField r;
  if (f.degree() == 1) {
    r.theta = QuadElement(-1, -f.coeff(0) / f.coeff(1));
    return r;
  }
  if (f.degree() != 2) fail(ErrorCode::UnsupportedResidueField, "residue field of degree " + std::to_string(f.degree()));
  Rational a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
  Rational disc = b * b - 4 * a * c;
  long long D = squarefree_part(disc);
  if (D == 1) fail(ErrorCode::UnsupportedResidueField, "place polynomial is reducible");
  Rational k = rational_sqrt(disc / Rational(D));
  r.D = D;
  r.theta = QuadElement(D, -b / (2 * a), k / (2 * a));
  return r;
}

inline QuadElement eval_at(const Poly& g, const QuadElement& theta) {
  QuadElement r(theta.d, 0);
  for (int i = g.degree(); i >= 0; --i) r = r * theta + QuadElement(theta.d, g.coeff(i));
  return r;
}

inline void require_Qs_base(const QuadForm& f) {
  if (f.field.base != BaseKind::RationalFunction || !f.field.is_base())
    fail(ErrorCode::UnsupportedField, "expected a form over Q(s)");
}

}  // namespace detail

/// Residue of phi at a place of Q(s): second (entries with odd valuation) or first.
inline ResidueForm residue(const QuadForm& phi, const Place& v, bool second) {
  detail::require_Qs_base(phi);
  ResidueForm out;
  if (v.kind == Place::Kind::DegreePlace) {
    for (const auto& e : phi.entries) {
      int deg = 0;
      Rational lead = e.base.rat;
      for (const auto& g : e.base.polys) {
        deg += g.degree();
        lead *= g.lead();
      }
      if ((deg % 2 == 1) == second) out.entries.emplace_back(-1, lead);
    }
    return out;
  }
  if (v.kind != Place::Kind::PolyPlace) fail(ErrorCode::UnsupportedResidueField, "not a place of Q(s)");
  auto rf = detail::residue_field(v.poly);
  out.D = rf.D;
  for (const auto& e : phi.entries) {
    bool has = std::find(e.base.polys.begin(), e.base.polys.end(), v.poly) != e.base.polys.end();
    if (has != second) continue;
    QuadElement u(rf.theta.d, e.base.rat);
    for (const auto& g : e.base.polys)
      if (!(g == v.poly)) u = u * detail::eval_at(g, rf.theta);
    if (out.D == 1) u.d = -1;
    out.entries.push_back(u);
  }
  return out;
}

inline ResidueForm second_residue(const QuadForm& phi, const Place& v) { return residue(phi, v, true); }
inline ResidueForm first_residue(const QuadForm& phi, const Place& v) { return residue(phi, v, false); }

inline bool is_hyperbolic_residue(const ResidueForm& r) {
  if (r.dim() % 2) return false;
  if (r.D == 1) {
    std::vector<long long> xs;
    for (const auto& e : r.entries) xs.push_back(squarefree_part(e.x));
    return anisotropic_dim_Q(xs) == 0;
  }
  return is_hyperbolic_quadfield(r.entries, r.D);
}

/// Finite places of Q(s) where phi can have a nontrivial second residue.
inline std::vector<Poly> residue_support(const QuadForm& phi) {
  std::set<Poly> s;
  for (const auto& e : phi.entries)
    for (const auto& g : e.base.polys) s.insert(g);
  return {s.begin(), s.end()};
}

/// Hyperbolicity over Q(s) through the split exact sequence of Witt groups.
inline bool is_hyperbolic_Qs(const QuadForm& phi) {
  detail::require_Qs_base(phi);
  if (phi.dim() % 2) return false;
  for (const auto& f : residue_support(phi))
    if (!is_hyperbolic_residue(second_residue(phi, poly_place(f)))) return false;
  return is_hyperbolic_residue(first_residue(phi, degree_place()));
}

/// Specialize s to a rational value; throws ZeroElement at zeros and poles.
inline std::vector<long long> specialize(const QuadForm& phi, const Rational& x) {
  detail::require_Qs_base(phi);
  std::vector<long long> out;
  for (const auto& e : phi.entries) out.push_back(squarefree_part(e.base.element().eval(x)));
  return out;
}

// ---------------------------------------------------------------------------

struct CitedAssumption {
  std::string claim;
  std::string reference;
};

struct SivatskiPrecondition {
  bool ok = false;
  bool degree4 = false;
  bool d_nonsquare = false;
  std::optional<ConicPoint> point1, point2;         // d = x^2 - a_i y^2
  std::vector<long long> obstructions1, obstructions2;  // places where the conics fail
  std::string reason;
};

/// Checks [Q(sqrt a1, sqrt a2):Q] = 4, d nonsquare, and d a norm from both quadratic fields.
inline SivatskiPrecondition sivatski_precondition(long long a1, long long a2, const Rational& d) {
  SivatskiPrecondition r;
  if (a1 == 0 || a2 == 0 || d == 0) {
    r.reason = "zero input";
    return r;
  }
  auto k = FieldTower::rationals();
  r.degree4 = multiquad_degree(std::vector<MonomialElement>{a1, a2}, k) == 4;
  r.d_nonsquare = !is_rational_square(d);
  auto c1 = conic_solve(a1, d), c2 = conic_solve(a2, d);
  r.point1 = c1.point;
  r.point2 = c2.point;
  r.obstructions1 = c1.obstructions;
  r.obstructions2 = c2.obstructions;
  r.ok = r.degree4 && r.d_nonsquare && c1.point && c2.point;
  if (!r.degree4) r.reason = "Q(sqrt a1, sqrt a2) is not biquadratic";
  else if (!r.d_nonsquare) r.reason = "d is a square";
  else if (!c1.point) r.reason = "d is not a norm from Q(sqrt a1)";
  else if (!c2.point) r.reason = "d is not a norm from Q(sqrt a2)";
  return r;
}

struct SivatskiWitness {
  Poly a;           // a_i = s^2 - 4 d c_i^2
  long long c = 1;  // c_i
  Poly norm_value;  // N((s + sqrt a_i)/2) = (s^2 - a_i)/4
  bool identity_holds = false;
  bool irreducible = false;
};

struct SivatskiInstance {
  long long a1 = 0, a2 = 0;
  Rational d;
  int r = 0;
  std::vector<SivatskiWitness> generated;  // i = 3..r
  ConicPoint point1, point2;
  CitedAssumption cited;

  /// Generators of L as square classes over Q(s).
  std::vector<SquareClass> generators() const {
    auto k = FieldTower::rational_function();
    std::vector<SquareClass> g{class_of(a1, k), class_of(a2, k)};
    for (const auto& w : generated) {
      BaseElement e(1);
      e.polys[w.a] = 1;
      g.push_back(canonical_square_class(MonomialElement(e), k));
    }
    return g;
  }
};

inline bool verify_sivatski_instance(const SivatskiInstance& inst) {
  Poly s = Poly::x();
  for (const auto& w : inst.generated) {
    Poly expect(inst.d * Rational(w.c) * Rational(w.c));
    Poly nv = (s * s - w.a) * Poly(Rational(1, 4));
    if (!(nv == expect) || !(w.norm_value == expect) || !is_irreducible(w.a)) return false;
  }
  auto chk = [&](const ConicPoint& p, long long a) { return p.x * p.x - Rational(a) * p.y * p.y == inst.d; };
  return chk(inst.point1, inst.a1) && chk(inst.point2, inst.a2);
}

inline SivatskiInstance sivatski_generate(long long a1, long long a2, const Rational& d, int r) {
  if (r < 3) fail(ErrorCode::PreconditionFailed, "r must be at least 3");
  auto pre = sivatski_precondition(a1, a2, d);
  if (!pre.ok) fail(ErrorCode::PreconditionFailed, pre.reason);
  SivatskiInstance inst;
  inst.a1 = a1;
  inst.a2 = a2;
  inst.d = d;
  inst.r = r;
  inst.point1 = *pre.point1;
  inst.point2 = *pre.point2;
  Poly s = Poly::x();
  for (int i = 3; i <= r; ++i) {
    SivatskiWitness w;
    w.c = i - 2;
    w.a = s * s - Poly(4 * d * Rational(w.c) * Rational(w.c));
    w.norm_value = (s * s - w.a) * Poly(Rational(1, 4));
    w.identity_holds = w.norm_value == Poly(d * Rational(w.c) * Rational(w.c));
    w.irreducible = is_irreducible(w.a);
    inst.generated.push_back(w);
  }
  inst.cited.claim = "d is not in K*^2 N(L*) for L = K(sqrt a1, ..., sqrt ar), K = Q(s)";
  inst.cited.reference = "A. S. Sivatski (2010), Cor. 10";
  return inst;
}

}  // namespace qfkit
