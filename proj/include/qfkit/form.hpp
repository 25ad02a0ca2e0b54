#pragma once

// Diagonal quadratic forms over a field tower and their basic algebra.

#include <string>
#include <vector>

#include "qfkit/fields.hpp"

namespace qfkit {

struct QuadForm {
  FieldTower field;
  std::vector<SquareClass> entries;

  QuadForm() = default;
  explicit QuadForm(FieldTower k) : field(std::move(k)) {}
  QuadForm(FieldTower k, const std::vector<MonomialElement>& xs) : field(std::move(k)) {
    for (const auto& x : xs) entries.push_back(canonical_square_class(x, field));
  }
  QuadForm(FieldTower k, std::vector<SquareClass> cs) : field(std::move(k)), entries(std::move(cs)) {
    for (auto& c : entries) c = canonical_square_class(c, field);
  }
  /// Diagonal form over Q with integer or rational entries.
  static QuadForm over_Q(std::initializer_list<long long> xs) {
    QuadForm f(FieldTower::rationals());
    for (long long x : xs) f.entries.push_back(class_of(x, f.field));
    return f;
  }

  std::size_t dim() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  const SquareClass& operator[](std::size_t i) const { return entries[i]; }

  std::string str() const {
    std::string s = "<";
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i) s += ",";
      s += to_string(entries[i], field);
    }
    return s + ">";
  }
};

inline QuadForm orthogonal_sum(const QuadForm& a, const QuadForm& b) {
  require_same_field(a.field, b.field);
  QuadForm r = a;
  r.entries.insert(r.entries.end(), b.entries.begin(), b.entries.end());
  return r;
}

inline QuadForm scale(const SquareClass& c, const QuadForm& f) {
  QuadForm r(f.field);
  for (const auto& e : f.entries) r.entries.push_back(mul(c, e, f.field));
  return r;
}

inline QuadForm scale(const MonomialElement& c, const QuadForm& f) {
  return scale(canonical_square_class(c, f.field), f);
}

inline QuadForm negate(const QuadForm& f) { return scale(class_of(-1, f.field), f); }

inline QuadForm tensor(const QuadForm& a, const QuadForm& b) {
  require_same_field(a.field, b.field);
  QuadForm r(a.field);
  for (const auto& x : a.entries)
    for (const auto& y : b.entries) r.entries.push_back(mul(x, y, a.field));
  return r;
}

inline QuadForm hyperbolic(std::size_t m, const FieldTower& k) {
  QuadForm r(k);
  for (std::size_t i = 0; i < m; ++i) {
    r.entries.push_back(one_class(k));
    r.entries.push_back(class_of(-1, k));
  }
  return r;
}

/// <<a1,...,an>> = <1,-a1> x ... x <1,-an>.
inline QuadForm pfister(const std::vector<SquareClass>& as, const FieldTower& k) {
  QuadForm r(k);
  r.entries.push_back(one_class(k));
  for (const auto& a : as) {
    if (a.base.rat == 0) fail(ErrorCode::ZeroSlot, "zero Pfister slot");
    QuadForm slot(k);
    slot.entries = {one_class(k), negate(canonical_square_class(a, k), k)};
    r = tensor(slot, r);
  }
  return r;
}

inline QuadForm pfister(const std::vector<MonomialElement>& as, const FieldTower& k) {
  std::vector<SquareClass> cs;
  for (const auto& a : as) {
    if (a.is_zero()) fail(ErrorCode::ZeroSlot, "zero Pfister slot");
    cs.push_back(canonical_square_class(a, k));
  }
  return pfister(cs, k);
}

inline QuadForm pfister_Q(std::initializer_list<long long> as) {
  std::vector<MonomialElement> xs(as.begin(), as.end());
  return pfister(xs, FieldTower::rationals());
}

/// Signed discriminant (-1)^(n(n-1)/2) a1...an.
inline SquareClass discriminant(const QuadForm& f) {
  SquareClass d = one_class(f.field);
  for (const auto& e : f.entries) d = mul(d, e, f.field);
  std::size_t n = f.dim();
  if ((n * (n - 1) / 2) % 2) d = negate(d, f.field);
  return d;
}

/// Unsigned determinant a1...an.
inline SquareClass determinant(const QuadForm& f) {
  SquareClass d = one_class(f.field);
  for (const auto& e : f.entries) d = mul(d, e, f.field);
  return d;
}

/// Scale every entry of a rational form to a squarefree integer; entries already are.
inline std::vector<long long> rational_entries(const QuadForm& f) {
  if (f.field.base != BaseKind::Rationals || !f.field.is_base()) fail(ErrorCode::UnsupportedField, "form is not over Q");
  std::vector<long long> r;
  for (const auto& e : f.entries) r.push_back(e.base.rat);
  return r;
}

}  // namespace qfkit
