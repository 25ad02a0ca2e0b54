#pragma once

// Laurent-tower machinery: rigid norm groups, odd-valued similarity factors and their
// hyperbolicity certificates, and the reduction of glued families to the base field.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qfkit/certificate.hpp"
#include "qfkit/forms.hpp"

namespace qfkit {

/// Norm group of a ramified quadratic extension K(sqrt u): K*^2 together with c K*^2, c = -u.
struct RigidNormGroup {
  FieldTower field;
  SquareClass u;
  SquareClass c;

  bool contains(const SquareClass& x) const {
    SquareClass y = canonical_square_class(x, field);
    return y.is_one() || y == c;
  }
};

inline RigidNormGroup rigid_norm_group(const SquareClass& u0, const FieldTower& k) {
  SquareClass u = canonical_square_class(u0, k);
  if (value_is_even(u.exps)) fail(ErrorCode::EvenValuation, "u must have a value outside 2vK");
  return {k, u, negate(u, k)};
}

inline RigidNormGroup rigid_norm_group(const MonomialElement& u, const FieldTower& k) {
  return rigid_norm_group(canonical_square_class(u, k), k);
}

inline bool has_odd_value(const SquareClass& c) { return !value_is_even(c.exps); }

struct RigidExtension {
  RamifiedExtension extension;
  bool hyperbolic = false;
};

/// phi over K(sqrt(-t)) for a similarity factor t whose last odd exponent coordinate is used as the new uniformizer.
inline RigidExtension rigid_simfactor_extension(const QuadForm& phi, const SquareClass& t0) {
  const auto& k = phi.field;
  SquareClass t = canonical_square_class(t0, k);
  if (!has_odd_value(t)) fail(ErrorCode::UnsupportedExponent, "t has even value");
  if (!in_G(t, phi)) fail(ErrorCode::NotASimilarityFactor, "t is not a similarity factor of phi");
  RigidExtension r;
  r.extension = adjoin_ramified_root(phi, negate(t, k));
  r.hyperbolic = is_hyperbolic(r.extension.form);
  if (!r.hyperbolic) fail(ErrorCode::PreconditionFailed, "form is not hyperbolic over K(sqrt(-t))");
  return r;
}

/// Square classes generated by the ratios e_i/e_0 of entries (the classes that can be similarity factors).
inline std::vector<SquareClass> entry_ratio_span(const QuadForm& phi, std::size_t limit = 1 << 14) {
  const auto& k = phi.field;
  std::set<SquareClass> span{one_class(k)};
  if (phi.dim() == 0) return {span.begin(), span.end()};
  for (std::size_t i = 1; i < phi.dim(); ++i) {
    SquareClass g = mul(phi[0], phi[i], k);
    if (span.count(g)) continue;
    std::vector<SquareClass> add;
    for (const auto& s : span) add.push_back(mul(s, g, k));
    span.insert(add.begin(), add.end());
    if (span.size() > limit) break;
  }
  return {span.begin(), span.end()};
}

/// An odd-valued similarity factor among the entry-ratio classes, if any.
inline std::optional<SquareClass> find_odd_simfactor(const QuadForm& phi) {
  for (const auto& c : entry_ratio_span(phi))
    if (has_odd_value(c) && in_G(c, phi)) return c;
  return std::nullopt;
}

struct OddSimfactorResult {
  bool found = false;
  SquareClass t;                        // odd-valued similarity factor
  std::optional<HypCertificate> cert;  // certificate for the target
  std::string reason;
};

namespace detail {

inline NormFactor ramified_root_factor(std::size_t index, int exponent) {
  NormFactor f;
  f.subset = {index};
  f.mono = MonomialElement(1);
  f.mask = 1;
  f.exponent = exponent;
  f.attestation.kind = Attestation::Kind::Decided;
  f.attestation.verdict = true;
  return f;
}

}  // namespace detail

/// Certificate that a lies in H(phi), built from an odd-valued similarity factor t:
/// a odd-valued gives a = N(sqrt(-a)); a even-valued gives a = N(sqrt(-at)) / N(sqrt(-t)).
inline OddSimfactorResult odd_simfactor_certificate(const QuadForm& phi, std::optional<SquareClass> target = std::nullopt) {
  const auto& k = phi.field;
  OddSimfactorResult r;
  auto t = find_odd_simfactor(phi);
  if (!t) {
    r.reason = "NoneFound: no odd-valued similarity factor among entry ratios";
    return r;
  }
  r.found = true;
  r.t = *t;
  SquareClass a = target ? canonical_square_class(*target, k) : *t;
  if (!in_G(a, phi)) {
    r.reason = "NotInG: target is not a similarity factor";
    return r;
  }
  HypCertificate c{k, a.element(), {}, MonomialElement(1), {}, "odd_simfactor"};
  if (a.is_one()) {
    r.cert = c;
    return r;
  }
  // Literal elements, not canonical classes: the norm identity must hold exactly.
  MonomialElement minus_one(-1);
  if (has_odd_value(a)) {
    c.tower = {minus_one * a.element()};
    c.norms = {detail::ramified_root_factor(0, 1)};
  } else {
    c.tower = {minus_one * a.element() * t->element(), minus_one * t->element()};
    c.norms = {detail::ramified_root_factor(0, 1), detail::ramified_root_factor(1, -1)};
  }
  r.cert = c;
  return r;
}

inline OddSimfactorResult odd_simfactor_certificate(const QuadForm& phi, const MonomialElement& target) {
  return odd_simfactor_certificate(phi, canonical_square_class(target, phi.field));
}

/// rho = perp_j t_{I_j} (phi_j)_K over K = k((t_1))...((t_n)).
inline QuadForm assemble_glued(const std::vector<QuadForm>& comps, const std::vector<std::vector<std::size_t>>& idx,
                               const FieldTower& big) {
  if (comps.size() != idx.size()) fail(ErrorCode::Degenerate, "one index set per component");
  std::set<std::vector<std::size_t>> seen;
  for (auto s : idx) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) fail(ErrorCode::Degenerate, "repeated index inside a set");
    if (!seen.insert(s).second) fail(ErrorCode::DuplicateIndexSets, "index sets must be distinct");
  }
  std::size_t d0 = comps.empty() ? 0 : comps[0].field.depth();
  if (d0 > big.depth()) fail(ErrorCode::FieldMismatch, "components live over a larger field than the tower");
  QuadForm rho(big);
  for (std::size_t j = 0; j < comps.size(); ++j) {
    if (comps[j].field.depth() != d0) fail(ErrorCode::FieldMismatch, "components over different fields");
    MonomialElement tI(1);
    tI.exps.assign(big.depth(), 0);
    for (std::size_t i : idx[j]) {
      if (i < 1 || d0 + i > big.depth()) fail(ErrorCode::Degenerate, "index out of range");
      tI.exps[d0 + i - 1] = 1;
    }
    for (const auto& e : comps[j].entries) {
      SquareClass c = e;
      c.exps.resize(big.depth(), 0);
      rho.entries.push_back(canonical_square_class(c.element() * tI, big));
    }
  }
  return rho;
}

enum class Verdict { Proved, Refuted, Undetermined };

inline std::string to_string(Verdict v) {
  return v == Verdict::Proved ? "proved" : v == Verdict::Refuted ? "refuted" : "undetermined";
}

struct GluedQuery {
  SquareClass a;
  bool transported = false;  // a in G(phi_1, ..., phi_r) over k
  bool direct = false;       // in_G(a, rho) over K
};

struct ReductionReport {
  QuadForm rho;
  int anisotropic_dim = 0;  // -1 when undecided
  bool in_I2 = false;
  Verdict verdict = Verdict::Undetermined;
  std::string route;
  std::optional<SquareClass> odd_factor;
  std::vector<GluedQuery> queries;
};

inline ReductionReport glued_family_reduce(const std::vector<QuadForm>& comps, const std::vector<std::vector<std::size_t>>& idx,
                                           const FieldTower& big, const std::vector<SquareClass>& queries = {}) {
  ReductionReport rep{assemble_glued(comps, idx, big)};
  try {
    rep.anisotropic_dim = anisotropic_dim(rep.rho);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UndecidableLayer) throw;
    rep.anisotropic_dim = -1;
  }
  rep.in_I2 = rep.rho.dim() % 2 == 0 && discriminant(rep.rho).is_one();
  if (rep.anisotropic_dim >= 0 && rep.anisotropic_dim % 4 == 2 && rep.in_I2) {
    rep.verdict = Verdict::Proved;
    rep.route = "dim(rho_an) = 2 mod 4 and rho in I^2";
  } else if (auto t = find_odd_simfactor(rep.rho)) {
    rep.verdict = Verdict::Refuted;
    rep.route = "odd-valued similarity factor";
    rep.odd_factor = t;
  } else {
    rep.route = "no implemented route applies";
  }
  FieldTower base = comps.empty() ? big.base_field() : comps[0].field;
  for (const auto& a0 : queries) {
    GluedQuery q;
    q.a = canonical_square_class(a0, base);
    q.transported = true;
    for (const auto& c : comps) q.transported = q.transported && in_G(q.a, c);
    SquareClass lifted = q.a;
    lifted.exps.resize(big.depth(), 0);
    q.direct = in_G(lifted, rep.rho);
    rep.queries.push_back(q);
  }
  return rep;
}

/// One sampled element of H(rho) from an unramified extension: z in k(sqrt g) with N(z) the sample value.
struct UnramifiedSample {
  std::vector<long long> gens;
  std::vector<Rational> coords;
};

/// rho = phi + t pi over k((t)); every sample norm from an extension splitting rho must lie in H(phi) K*^2.
inline bool bhaskhar_sample_check(const QuadForm& phi, const QuadForm& pi, const std::vector<UnramifiedSample>& samples) {
  if (!(phi.field == FieldTower::rationals()) || !(pi.field == phi.field))
    fail(ErrorCode::UnsupportedField, "samples are drawn over Q");
  FieldTower big = FieldTower::laurent(phi.field, 1);
  QuadForm rho = assemble_glued({phi, pi}, {{}, {1}}, big);
  bool ok = true;
  for (const auto& s : samples) {
    if (!is_hyperbolic_unramified(rho, s.gens)) continue;
    MultiQuadElement z(s.gens);
    if (s.coords.size() != z.size()) fail(ErrorCode::Degenerate, "sample coordinates have the wrong length");
    z.coords = s.coords;
    Rational n = z.norm();
    if (n == 0) continue;
    // H(phi) membership witnessed by the same extension, which must split phi itself
    ok = ok && is_hyperbolic_multiquad(phi, s.gens) && in_G(class_of(n, phi.field), phi);
  }
  return ok;
}

}  // namespace qfkit
