#pragma once

// Field towers k((t1))...((tn)) over k in {Q, F_p, Q(s)}, monomial elements,
// canonical square classes, valuations and places.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qfkit/arith.hpp"
#include "qfkit/poly.hpp"

namespace qfkit {

enum class BaseKind { Rationals, PrimeField, RationalFunction };

struct FieldTower {
  BaseKind base = BaseKind::Rationals;
  long long p = 0;               // PrimeField only
  std::string func_var = "s";    // RationalFunction only
  std::vector<std::string> steps;  // Laurent variables, innermost first

  static FieldTower rationals(std::vector<std::string> steps = {}) {
    FieldTower k;
    k.steps = std::move(steps);
    k.validate();
    return k;
  }
  static FieldTower prime_field(long long p, std::vector<std::string> steps = {}) {
    FieldTower k;
    k.base = BaseKind::PrimeField;
    k.p = p;
    k.steps = std::move(steps);
    k.validate();
    return k;
  }
  static FieldTower rational_function(std::string var = "s", std::vector<std::string> steps = {}) {
    FieldTower k;
    k.base = BaseKind::RationalFunction;
    k.func_var = std::move(var);
    k.steps = std::move(steps);
    k.validate();
    return k;
  }
  /// k((t1))...((tn)) with t_i named "t1".."tn".
  static FieldTower laurent(FieldTower base, int n) {
    for (int i = 1; i <= n; ++i) base.steps.push_back("t" + std::to_string(i));
    base.validate();
    return base;
  }

  void validate() const {
    if (base == BaseKind::PrimeField && (p <= 2 || !is_prime(static_cast<unsigned long long>(p)))) {
      fail(ErrorCode::BadField, "F_p requires an odd prime, got " + std::to_string(p));
    }
    std::set<std::string> seen;
    for (const auto& v : steps) {
      if (v.empty()) fail(ErrorCode::BadField, "empty Laurent variable name");
      if (base == BaseKind::RationalFunction && v == func_var) fail(ErrorCode::BadField, "variable clash: " + v);
      if (!seen.insert(v).second) fail(ErrorCode::BadField, "duplicate Laurent variable " + v);
    }
  }

  std::size_t depth() const { return steps.size(); }
  bool is_base() const { return steps.empty(); }
  FieldTower base_field() const {
    FieldTower k = *this;
    k.steps.clear();
    return k;
  }
  FieldTower drop_last() const {
    FieldTower k = *this;
    if (!k.steps.empty()) k.steps.pop_back();
    return k;
  }
  int step_index(const std::string& name) const {
    for (std::size_t i = 0; i < steps.size(); ++i)
      if (steps[i] == name) return static_cast<int>(i);
    return -1;
  }

  std::string spec() const {
    std::string s;
    switch (base) {
      case BaseKind::Rationals: s = "Q"; break;
      case BaseKind::PrimeField: s = "F" + std::to_string(p); break;
      case BaseKind::RationalFunction: s = "Q(" + func_var + ")"; break;
    }
    for (const auto& v : steps) s += "[[" + v + "]]";
    return s;
  }

  friend bool operator==(const FieldTower& a, const FieldTower& b) {
    return a.base == b.base && a.p == b.p && a.steps == b.steps &&
           (a.base != BaseKind::RationalFunction || a.func_var == b.func_var);
  }
};

inline void require_same_field(const FieldTower& a, const FieldTower& b) {
  if (!(a == b)) fail(ErrorCode::FieldMismatch, a.spec() + " vs " + b.spec());
}

/// Element of the base field in factored form: q * prod polys[f]^e.
/// Over Q and F_p the polynomial part is empty.
struct BaseElement {
  Rational q = 1;
  std::map<Poly, int> polys;

  BaseElement() = default;
  BaseElement(Rational r) : q(std::move(r)) {}  // NOLINT
  BaseElement(long long r) : q(r) {}            // NOLINT

  bool is_rational() const { return polys.empty(); }
  friend BaseElement operator*(BaseElement a, const BaseElement& b) {
    a.q *= b.q;
    for (const auto& [f, e] : b.polys) {
      if ((a.polys[f] += e) == 0) a.polys.erase(f);
    }
    return a;
  }
  BaseElement inverse() const {
    if (q == 0) fail(ErrorCode::ZeroElement, "inverse of 0");
    BaseElement r;
    r.q = 1 / q;
    for (const auto& [f, e] : polys) r.polys[f] = -e;
    return r;
  }
  friend bool operator==(const BaseElement& a, const BaseElement& b) { return a.q == b.q && a.polys == b.polys; }

  /// Expanded rational function value at s = x.
  Rational eval(const Rational& x) const {
    Rational r = q;
    for (const auto& [f, e] : polys) {
      Rational v = f.eval(x);
      if (v == 0) fail(ErrorCode::ZeroElement, "specialization hits a zero or pole");
      for (int i = 0; i < std::abs(e); ++i) r = e > 0 ? r * v : r / v;
    }
    return r;
  }

  std::string str(const std::string& var = "s") const {
    std::string s = to_string(q);
    for (const auto& [f, e] : polys) {
      s += "*(" + f.str(var) + ")";
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }
};

/// c * t1^e1 * ... * tn^en.
struct MonomialElement {
  BaseElement coeff;
  std::vector<int> exps;

  MonomialElement() = default;
  MonomialElement(BaseElement c, std::vector<int> e = {}) : coeff(std::move(c)), exps(std::move(e)) {}  // NOLINT
  MonomialElement(long long c) : coeff(c) {}                                                          // NOLINT

  static MonomialElement variable(std::size_t n, std::size_t i, int e = 1) {
    MonomialElement m(1);
    m.exps.assign(n, 0);
    m.exps[i] = e;
    return m;
  }
  bool is_zero() const { return coeff.q == 0; }
  friend MonomialElement operator*(const MonomialElement& a, const MonomialElement& b) {
    MonomialElement r;
    r.coeff = a.coeff * b.coeff;
    std::size_t n = std::max(a.exps.size(), b.exps.size());
    r.exps.assign(n, 0);
    for (std::size_t i = 0; i < a.exps.size(); ++i) r.exps[i] += a.exps[i];
    for (std::size_t i = 0; i < b.exps.size(); ++i) r.exps[i] += b.exps[i];
    return r;
  }
  MonomialElement inverse() const {
    MonomialElement r;
    r.coeff = coeff.inverse();
    for (int e : exps) r.exps.push_back(-e);
    return r;
  }
  MonomialElement pow(int k) const {
    MonomialElement r(1);
    r.exps.assign(exps.size(), 0);
    MonomialElement b = k >= 0 ? *this : inverse();
    for (int i = 0; i < std::abs(k); ++i) r = r * b;
    return r;
  }
  friend bool operator==(const MonomialElement& a, const MonomialElement& b) {
    if (!(a.coeff == b.coeff)) return false;
    std::size_t n = std::max(a.exps.size(), b.exps.size());
    for (std::size_t i = 0; i < n; ++i) {
      int x = i < a.exps.size() ? a.exps[i] : 0, y = i < b.exps.size() ? b.exps[i] : 0;
      if (x != y) return false;
    }
    return true;
  }
};

/// Canonical representative of the square class of a base element.
/// Q: signed squarefree integer. F_p: 1 or the least non-residue.
/// Q(s): signed squarefree integer times distinct primitive irreducible polynomials.
struct BaseClass {
  long long rat = 1;
  std::vector<Poly> polys;  // sorted

  friend bool operator==(const BaseClass& a, const BaseClass& b) { return a.rat == b.rat && a.polys == b.polys; }
  friend bool operator<(const BaseClass& a, const BaseClass& b) {
    if (a.rat != b.rat) return a.rat < b.rat;
    return std::lexicographical_compare(a.polys.begin(), a.polys.end(), b.polys.begin(), b.polys.end());
  }
  bool is_one() const { return rat == 1 && polys.empty(); }
  BaseElement element() const {
    BaseElement e(rat);
    for (const auto& f : polys) e.polys[f] = 1;
    return e;
  }
  std::string str(const std::string& var = "s") const {
    std::string s = std::to_string(rat);
    if (polys.empty()) return s;
    if (rat == 1) s.clear();
    else if (rat == -1) s = "-";
    else s += "*";
    for (std::size_t i = 0; i < polys.size(); ++i) {
      if (i) s += "*";
      s += "(" + polys[i].str(var) + ")";
    }
    return s;
  }
};

struct SquareClass {
  BaseClass base;
  std::vector<int> exps;  // entries in {0,1}, one per Laurent step

  const long long& rat() const { return base.rat; }
  bool is_one() const {
    return base.is_one() && std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
  }
  MonomialElement element() const { return MonomialElement(base.element(), exps); }
  friend bool operator==(const SquareClass& a, const SquareClass& b) { return a.base == b.base && a.exps == b.exps; }
  friend bool operator!=(const SquareClass& a, const SquareClass& b) { return !(a == b); }
  friend bool operator<(const SquareClass& a, const SquareClass& b) {
    if (a.exps != b.exps) return a.exps < b.exps;
    return a.base < b.base;
  }
  int top_exp() const { return exps.empty() ? 0 : exps.back(); }
};

namespace detail {

inline long long fp_reduce(const Rational& q, long long p) {
  BigInt n = num(q) % p, d = den(q) % p;
  if (n < 0) n += p;
  if (d < 0) d += p;
  if (d == 0) fail(ErrorCode::ZeroElement, "denominator divisible by p");
  if (n == 0) fail(ErrorCode::ZeroElement, "element vanishes in F_p");
  long long dinv = static_cast<long long>(powmod(static_cast<unsigned long long>(d), static_cast<unsigned long long>(p - 2),
                                                 static_cast<unsigned long long>(p)));
  return static_cast<long long>(mulmod(static_cast<unsigned long long>(n), static_cast<unsigned long long>(dinv),
                                       static_cast<unsigned long long>(p)));
}

}  // namespace detail

inline BaseClass base_class(const BaseElement& x, const FieldTower& k) {
  if (x.q == 0) fail(ErrorCode::ZeroElement, "zero has no square class");
  BaseClass c;
  switch (k.base) {
    case BaseKind::Rationals:
      if (!x.is_rational()) fail(ErrorCode::BadField, "polynomial entry over Q");
      c.rat = squarefree_part(x.q);
      break;
    case BaseKind::PrimeField:
      if (!x.is_rational()) fail(ErrorCode::BadField, "polynomial entry over F_p");
      c.rat = legendre(detail::fp_reduce(x.q, k.p), k.p) == 1 ? 1 : least_nonresidue(k.p);
      break;
    case BaseKind::RationalFunction: {
      Rational unit = x.q;
      std::map<Poly, int> mult;
      for (const auto& [f, e] : x.polys) {
        auto fz = factor(f);
        for (int i = 0; i < std::abs(e); ++i) unit = e > 0 ? unit * fz.unit : unit / fz.unit;
        for (const auto& [g, m] : fz.factors) mult[g] += m * e;
      }
      c.rat = squarefree_part(unit);
      for (const auto& [g, m] : mult)
        if (m % 2) c.polys.push_back(g);
      std::sort(c.polys.begin(), c.polys.end());
      break;
    }
  }
  return c;
}

inline BaseClass base_class_mul(const BaseClass& a, const BaseClass& b, const FieldTower& k) {
  BaseClass c;
  if (k.base == BaseKind::PrimeField) {
    bool na = a.rat != 1, nb = b.rat != 1;
    c.rat = (na != nb) ? least_nonresidue(k.p) : 1;
    return c;
  }
  c.rat = sqf_mul(a.rat, b.rat);
  std::set_symmetric_difference(a.polys.begin(), a.polys.end(), b.polys.begin(), b.polys.end(),
                                std::back_inserter(c.polys));
  return c;
}

/// Canonical square class of a monomial element; the representative r satisfies x/r in K*^2.
inline SquareClass canonical_square_class(const MonomialElement& x, const FieldTower& k) {
  if (x.is_zero()) fail(ErrorCode::ZeroElement, "zero has no square class");
  if (x.exps.size() > k.depth()) fail(ErrorCode::BadField, "exponent vector longer than tower depth");
  SquareClass c;
  c.base = base_class(x.coeff, k);
  c.exps.assign(k.depth(), 0);
  for (std::size_t i = 0; i < x.exps.size(); ++i) c.exps[i] = ((x.exps[i] % 2) + 2) % 2;
  return c;
}

inline SquareClass canonical_square_class(const SquareClass& x, const FieldTower& k) {
  return canonical_square_class(x.element(), k);
}

inline SquareClass class_of(long long n, const FieldTower& k) { return canonical_square_class(MonomialElement(n), k); }
inline SquareClass class_of(const Rational& q, const FieldTower& k) {
  return canonical_square_class(MonomialElement(BaseElement(q)), k);
}
inline SquareClass one_class(const FieldTower& k) { return class_of(1, k); }

inline SquareClass mul(const SquareClass& a, const SquareClass& b, const FieldTower& k) {
  SquareClass c;
  c.base = base_class_mul(a.base, b.base, k);
  c.exps.assign(k.depth(), 0);
  for (std::size_t i = 0; i < k.depth(); ++i) {
    int x = i < a.exps.size() ? a.exps[i] : 0, y = i < b.exps.size() ? b.exps[i] : 0;
    c.exps[i] = x ^ y;
  }
  return c;
}

inline SquareClass negate(const SquareClass& a, const FieldTower& k) { return mul(a, class_of(-1, k), k); }

inline bool is_square(const MonomialElement& x, const FieldTower& k) { return canonical_square_class(x, k).is_one(); }

struct ValuationData {
  std::vector<int> value;  // lexicographically ordered Z^n
  BaseClass angular;
};

inline ValuationData valuation(const MonomialElement& x, const FieldTower& k) {
  if (x.is_zero()) fail(ErrorCode::ZeroElement, "valuation of zero");
  ValuationData v;
  v.value.assign(k.depth(), 0);
  for (std::size_t i = 0; i < x.exps.size() && i < k.depth(); ++i) v.value[i] = x.exps[i];
  v.angular = base_class(x.coeff, k);
  return v;
}

inline bool value_is_even(const std::vector<int>& v) {
  return std::all_of(v.begin(), v.end(), [](int e) { return e % 2 == 0; });
}

/// [K(sqrt a1,...,sqrt ar):K] = 2^(rank of the classes in K*/K*^2).
inline long long multiquad_degree(const std::vector<SquareClass>& as, const FieldTower& k) {
  std::set<SquareClass> span{one_class(k)};
  for (const auto& a : as) {
    SquareClass c = canonical_square_class(a, k);
    if (span.count(c)) continue;
    std::vector<SquareClass> add;
    for (const auto& s : span) add.push_back(mul(s, c, k));
    span.insert(add.begin(), add.end());
  }
  return static_cast<long long>(span.size());
}

inline long long multiquad_degree(const std::vector<MonomialElement>& as, const FieldTower& k) {
  std::vector<SquareClass> cs;
  for (const auto& a : as) cs.push_back(canonical_square_class(a, k));
  return multiquad_degree(cs, k);
}

enum class SplitTag { Split, Inert, Ramified };

inline std::string to_string(SplitTag t) {
  switch (t) {
    case SplitTag::Split: return "split";
    case SplitTag::Inert: return "inert";
    case SplitTag::Ramified: return "ramified";
  }
  return "?";
}

/// Decomposition of the rational prime p in Q(sqrt d), d squarefree.
inline SplitTag split_prime_in_quadratic(long long p, long long d) {
  if (d == 0 || d == 1 || squarefree_part(d) != d) fail(ErrorCode::BadDiscriminant, "d must be squarefree, not 0 or 1");
  if (p < 2 || !is_prime(static_cast<unsigned long long>(p))) fail(ErrorCode::PreconditionFailed, "p must be prime");
  if (p == 2) {
    long long r = mod_floor(d, 8);
    if (r == 1) return SplitTag::Split;
    if (r == 5) return SplitTag::Inert;
    return SplitTag::Ramified;
  }
  if (d % p == 0) return SplitTag::Ramified;
  return legendre(d, p) == 1 ? SplitTag::Split : SplitTag::Inert;
}

/// A place of Q, of Q(sqrt d), or of Q(s).
struct Place {
  enum class Kind { RealEmbedding, RationalPrime, QuadFieldPrime, PolyPlace, DegreePlace };
  Kind kind = Kind::RationalPrime;
  long long p = 0;        // prime below (RationalPrime / QuadFieldPrime)
  long long d = 1;        // ambient sqrt(d) for QuadFieldPrime / RealEmbedding over Q(sqrt d)
  int sign = 1;           // RealEmbedding: image of sqrt d is sign*|sqrt d|; split primes: which root
  SplitTag tag = SplitTag::Inert;
  Poly poly;              // PolyPlace

  static Place real() { return Place{Kind::RealEmbedding}; }
  static Place prime(long long p) {
    Place v;
    v.p = p;
    return v;
  }
  bool is_real() const { return kind == Kind::RealEmbedding; }

  std::string str() const {
    switch (kind) {
      case Kind::RealEmbedding: return d == 1 ? "inf" : (sign > 0 ? "inf+" : "inf-");
      case Kind::RationalPrime: return std::to_string(p);
      case Kind::QuadFieldPrime:
        return std::to_string(p) + "/" + to_string(tag) + (tag == SplitTag::Split ? (sign > 0 ? "+" : "-") : "");
      case Kind::PolyPlace: return "(" + poly.str() + ")";
      case Kind::DegreePlace: return "1/s";
    }
    return "?";
  }
  friend bool operator<(const Place& a, const Place& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.p != b.p) return a.p < b.p;
    if (a.sign != b.sign) return a.sign < b.sign;
    return a.poly < b.poly;
  }
  friend bool operator==(const Place& a, const Place& b) { return !(a < b) && !(b < a); }
};

inline std::string to_string(const SquareClass& c, const FieldTower& k) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < c.exps.size(); ++i)
    if (c.exps[i]) parts.push_back(k.steps[i]);
  std::string s = c.base.str(k.func_var);
  if (parts.empty()) return s;
  std::string out = s == "1" ? "" : (s == "-1" ? "-" : s + "*");
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
  return out;
}

inline std::string to_string(const MonomialElement& m, const FieldTower& k) {
  std::string s = m.coeff.str(k.func_var);
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (!m.exps[i]) continue;
    s += "*" + k.steps[i];
    if (m.exps[i] != 1) s += "^" + std::to_string(m.exps[i]);
  }
  return s;
}

}  // namespace qfkit
