#pragma once

// Similarity factors and certificate-producing procedures over Q:
// single and biquadratic norm certificates, Pfister, two-Pfister, height-2, torsion and
// G = H certificates, and the Lambda(L/K) = G/H query.

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qfkit/certificate.hpp"
#include "qfkit/conic.hpp"
#include "qfkit/forms.hpp"
#include "qfkit/functionfield.hpp"
#include "qfkit/localglobal.hpp"

namespace qfkit {

/// Search bound for candidate square classes; overridable through QFKIT_SEARCH_BOUND.
inline long long search_bound() {
  if (const char* s = std::getenv("QFKIT_SEARCH_BOUND")) {
    long long v = std::atoll(s);
    if (v > 0) return v;
  }
  return 200;
}

namespace detail {

inline void require_Q(const QuadForm& phi) {
  if (!(phi.field == FieldTower::rationals())) fail(ErrorCode::UnsupportedField, "certificate procedures run over Q");
}

inline Rational rat_of(const SquareClass& c) { return Rational(c.rat()); }

// a is a norm from Q(sqrt d): (a, d)_v = 1 at every place.
inline bool norm_from(const Rational& a, long long d) {
  long long A = squarefree_part(a);
  for (long long v : hilbert_support(A, d))
    if (hilbert_Q(A, d, v) == -1) return false;
  return true;
}

inline MonomialElement qelt(const Rational& x) { return MonomialElement(BaseElement(x)); }

inline Attestation attest(const QuadForm& phi, const std::vector<long long>& gens) {
  Attestation at;
  std::vector<SquareClass> cls;
  for (long long g : gens) cls.push_back(class_of(g, phi.field));
  if (auto m = find_matching(phi, cls)) {
    at.kind = Attestation::Kind::Symbolic;
    at.matching = *m;
    return at;
  }
  at.kind = Attestation::Kind::Decided;
  at.verdict = is_hyperbolic_multiquad(phi, gens);
  return at;
}

// Candidate d for quadratic extensions, in a fixed order: structural classes first, then small squarefree integers.
inline std::vector<long long> candidate_classes(const QuadForm& phi, const Rational& a) {
  std::vector<long long> out;
  std::set<long long> seen{1};
  auto push = [&](long long d) {
    d = squarefree_part(d);
    if (seen.insert(d).second) out.push_back(d);
  };
  long long A = squarefree_part(a);
  push(-1);
  push(-A);
  long long disc = discriminant(phi).rat();
  push(disc);
  push(-disc);
  auto es = rational_entries(phi);
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      push(sqf_mul(-1, sqf_mul(es[i], es[j])));
      push(sqf_mul(-A, sqf_mul(es[i], es[j])));
    }
  long long b = search_bound();
  for (long long n = 2; n <= b; ++n) {
    if (squarefree_part(n) != n) continue;
    push(n);
    push(-n);
  }
  return out;
}

inline HypCertificate empty_certificate(const Rational& a) {
  HypCertificate c{FieldTower::rationals(), qelt(a), {}, MonomialElement(1), {}, ""};
  return c;
}

}  // namespace detail

/// Single quadratic certificate: a = N(x + y sqrt d) with phi hyperbolic over Q(sqrt d).
inline HypCertificate quadratic_certificate(const Rational& a, const QuadForm& phi, long long d) {
  auto pt = conic_point(Rational(d), a);
  if (!pt) fail(ErrorCode::NotFound, "a is not a norm from Q(sqrt d)");
  HypCertificate c = detail::empty_certificate(a);
  c.tower = {MonomialElement(d)};
  NormFactor f;
  f.subset = {0};
  f.coords = {pt->x, pt->y};
  f.attestation = detail::attest(phi, {d});
  c.norms = {f};
  c.procedure = "quadratic";
  return c;
}

/// Trivial certificates: a a square, or phi already hyperbolic (L = K).
inline std::optional<HypCertificate> trivial_certificate(const Rational& a, const QuadForm& phi) {
  if (is_rational_square(a)) {
    HypCertificate c = detail::empty_certificate(a);
    c.square_factor = detail::qelt(rational_sqrt(a));
    c.procedure = "square";
    return c;
  }
  if (is_hyperbolic(phi)) {
    HypCertificate c = detail::empty_certificate(a);
    NormFactor f;
    f.coords = {a};
    f.attestation.kind = Attestation::Kind::Decided;
    f.attestation.verdict = true;
    c.norms = {f};
    c.procedure = "hyperbolic";
    return c;
  }
  return std::nullopt;
}

struct BiquadWitness {
  std::vector<long long> gens;  // {u, w}, or {u} when the two fields coincide
  MultiQuadElement z;
  Rational scale;  // N(z) = c * scale^2
};

/// From x1 in Q(sqrt u) and x2 in Q(sqrt w) of norm c: N(x1 + x2) = c (Tr x1 + Tr x2)^2 over Q(sqrt u, sqrt w).
inline BiquadWitness biquadratic_combine(const Rational& c, long long u, long long w, const ConicPoint& x1, const ConicPoint& x2) {
  if (x1.x * x1.x - Rational(u) * x1.y * x1.y != c || x2.x * x2.x - Rational(w) * x2.y * x2.y != c)
    fail(ErrorCode::PreconditionFailed, "witnesses do not have norm c");
  BiquadWitness r;
  if (is_rational_square(c)) {
    r.gens = {u, w};
    r.z = MultiQuadElement({u, w}, 1);
    r.scale = 1 / rational_sqrt(c);
    return r;
  }
  if (squarefree_part(u) == squarefree_part(w)) {
    r.gens = {u};
    r.z = MultiQuadElement({u});
    r.z.coords = {x1.x, x1.y};
    r.scale = 1;
    return r;
  }
  Rational s = x1.x + x2.x != 0 ? Rational(1) : Rational(-1);
  if (x1.x + s * x2.x == 0) fail(ErrorCode::CertificateSearchExhausted, "both witnesses are pure");
  r.gens = {u, w};
  r.z = MultiQuadElement({u, w});
  r.z.coords = {x1.x + s * x2.x, x1.y, s * x2.y, 0};
  r.scale = 2 * (x1.x + s * x2.x);
  if (r.z.norm() != c * r.scale * r.scale) fail(ErrorCode::Degenerate, "biquadratic norm identity failed");
  return r;
}

/// Certificate over Q(sqrt d1, sqrt d2) from the closed-form combination.
inline HypCertificate biquadratic_certificate(const Rational& a, const QuadForm& phi, long long d1, long long d2) {
  auto p1 = conic_point(Rational(d1), a), p2 = conic_point(Rational(d2), a);
  if (!p1 || !p2) fail(ErrorCode::NotFound, "a is not a norm from both quadratic fields");
  BiquadWitness w = biquadratic_combine(a, d1, d2, *p1, *p2);
  HypCertificate c = detail::empty_certificate(a);
  for (long long g : w.gens) c.tower.push_back(MonomialElement(g));
  NormFactor f;
  f.subset = w.gens.size() == 2 ? std::vector<std::size_t>{0, 1} : std::vector<std::size_t>{0};
  f.coords = w.z.coords;
  f.attestation = detail::attest(phi, w.gens);
  c.norms = {f};
  c.square_factor = detail::qelt(1 / w.scale);
  c.procedure = "biquadratic";
  return c;
}

struct BetaStep {
  long long d = 1;
  ConicPoint witness;  // x^2 - d y^2 = a
  std::size_t witt_index = 0;
};

/// d with a in N(Q(sqrt d)) and i(phi over Q(sqrt d)) > i(phi).
inline BetaStep beta_step(const Rational& a, const QuadForm& phi) {
  detail::require_Q(phi);
  if (!in_G(class_of(a, phi.field), phi)) fail(ErrorCode::NotASimilarityFactor, "a is not in G(phi)");
  if (is_hyperbolic(phi)) fail(ErrorCode::PreconditionFailed, "phi is already split");
  std::size_t i0 = witt_index_Q(phi);
  for (long long d : detail::candidate_classes(phi, a)) {
    if (!detail::norm_from(a, d)) continue;
    std::size_t i1 = witt_index_multiquad(phi, {d});
    if (i1 > i0) {
      auto p = conic_point(Rational(d), a);
      if (!p) continue;
      return {d, *p, i1};
    }
  }
  fail(ErrorCode::NotFound, "no quadratic extension raising the Witt index within the search bound");
}

namespace detail {

inline std::optional<HypCertificate> search_single(const Rational& a, const QuadForm& phi) {
  for (long long d : candidate_classes(phi, a))
    if (norm_from(a, d) && is_hyperbolic_multiquad(phi, {d})) return quadratic_certificate(a, phi, d);
  return std::nullopt;
}

inline std::optional<HypCertificate> search_double(const Rational& a, const QuadForm& phi, std::size_t width = 48,
                                                   const std::vector<long long>& first = {}) {
  std::vector<long long> ok;
  for (long long d : candidate_classes(phi, a)) {
    if (norm_from(a, d)) ok.push_back(d);
    if (ok.size() >= width) break;
  }
  const auto& d1s = first.empty() ? ok : first;
  for (long long d1 : d1s)
    for (long long d2 : ok) {
      if (d2 == d1 || squarefree_part(d1 * d2) == 1) continue;
      if (is_hyperbolic_multiquad(phi, {d1, d2})) return biquadratic_certificate(a, phi, d1, d2);
    }
  return std::nullopt;
}

inline HypCertificate tagged(HypCertificate c, const std::string& p) {
  c.procedure = p;
  return c;
}

// Reuses a certificate built for a Witt-equivalent form; attestations are recomputed against phi.
inline HypCertificate reattested(HypCertificate c, const QuadForm& phi) {
  for (auto& f : c.norms) {
    std::vector<long long> gens;
    for (std::size_t i : f.subset) gens.push_back(squarefree_part(c.tower.at(i).coeff.q));
    f.attestation = attest(phi, gens);
  }
  return c;
}

}  // namespace detail

/// a in G(pi) = H(pi) for a (scaled) Pfister form, by a tower of length at most 1.
inline HypCertificate pfister_hyp_certificate(const Rational& a, const QuadForm& pi) {
  detail::require_Q(pi);
  if (!in_G(class_of(a, pi.field), pi)) fail(ErrorCode::NotASimilarityFactor, "a is not in G(pi)");
  if (auto t = trivial_certificate(a, pi)) return *t;
  if (auto c = detail::search_single(a, pi)) return detail::tagged(*c, "pfister");
  fail(ErrorCode::NotFound, "no splitting quadratic extension within the search bound");
}

/// phi = c1 pi + c2 rho with pi, rho Pfister of different folds; tower length at most 2.
inline HypCertificate two_pfister_certificate(const Rational& a, const QuadForm& pi, const QuadForm& rho, const Rational& c1,
                                              const Rational& c2) {
  detail::require_Q(pi);
  QuadForm phi = orthogonal_sum(scale(detail::qelt(c1), pi), scale(detail::qelt(c2), rho));
  SquareClass ac = class_of(a, phi.field);
  if (!in_G(ac, phi)) fail(ErrorCode::NotASimilarityFactor, "a is not in G(phi)");
  if (auto t = trivial_certificate(a, phi)) return *t;
  if (!in_G(ac, pi) || !in_G(ac, rho)) fail(ErrorCode::PreconditionFailed, "a is not in G(pi) and G(rho)");
  if (is_hyperbolic(pi)) return detail::tagged(detail::reattested(pfister_hyp_certificate(a, rho), phi), "two_pfister");
  if (is_hyperbolic(rho)) return detail::tagged(detail::reattested(pfister_hyp_certificate(a, pi), phi), "two_pfister");
  auto c = pfister_hyp_certificate(a, pi), e = pfister_hyp_certificate(a, rho);
  long long d1 = squarefree_part(c.tower.at(0).coeff.q), d2 = squarefree_part(e.tower.at(0).coeff.q);
  if (is_hyperbolic_multiquad(phi, {d1, d2})) return detail::tagged(biquadratic_certificate(a, phi, d1, d2), "two_pfister");
  if (auto s = detail::search_double(a, phi)) return detail::tagged(*s, "two_pfister");
  fail(ErrorCode::CertificateSearchExhausted, "no biquadratic splitting field found");
}

/// Height <= 2 (caller-asserted): first a Witt-index-raising step, then a second quadratic step.
inline HypCertificate height2_certificate(const Rational& a, const QuadForm& phi) {
  detail::require_Q(phi);
  if (!in_G(class_of(a, phi.field), phi)) fail(ErrorCode::NotASimilarityFactor, "a is not in G(phi)");
  if (auto t = trivial_certificate(a, phi)) return *t;
  if (auto c = detail::search_single(a, phi)) return detail::tagged(*c, "height2");
  std::vector<long long> firsts;
  std::size_t i0 = witt_index_Q(phi);
  for (long long d : detail::candidate_classes(phi, a)) {
    if (detail::norm_from(a, d) && witt_index_multiquad(phi, {d}) > i0) firsts.push_back(d);
    if (firsts.size() >= 24) break;
  }
  if (firsts.empty()) fail(ErrorCode::DecompositionNotFound, "no first step found");
  if (auto s = detail::search_double(a, phi, 48, firsts)) return detail::tagged(*s, "height2");
  fail(ErrorCode::CertificateSearchExhausted, "no second step found");
}

/// Torsion forms in I^2 over Q: every a is in Hyp_2(phi).
inline HypCertificate torsion_hyp_certificate(const Rational& a, const QuadForm& phi) {
  detail::require_Q(phi);
  if (signature_Q(rational_entries(phi)) != 0) fail(ErrorCode::NotTorsion, "phi has nonzero signature");
  if (phi.dim() % 2 || !discriminant(phi).is_one()) fail(ErrorCode::PreconditionFailed, "phi is not in I^2");
  if (auto t = trivial_certificate(a, phi)) return *t;
  if (auto c = detail::search_single(a, phi)) return detail::tagged(*c, "torsion");
  if (auto c = detail::search_double(a, phi)) return detail::tagged(*c, "torsion");
  fail(ErrorCode::DepthLimitExceeded, "no certificate of depth <= 2 found");
}

/// G(phi) = H(phi) over Q: a certificate of depth at most 2.
inline HypCertificate in_G_H_certificate(const Rational& a, const QuadForm& phi) {
  detail::require_Q(phi);
  if (!in_G(class_of(a, phi.field), phi)) fail(ErrorCode::NotASimilarityFactor, "a is not in G(phi)");
  if (auto t = trivial_certificate(a, phi)) return detail::tagged(*t, "in_G_H");
  if (auto c = detail::search_single(a, phi)) return detail::tagged(*c, "in_G_H");
  if (auto c = detail::search_double(a, phi)) return detail::tagged(*c, "in_G_H");
  fail(ErrorCode::DepthLimitExceeded, "no certificate of depth <= 2 found");
}

/// G(phi x psi) = G(phi) for odd-dimensional psi, on samples.
inline bool odd_multiplier_check(const QuadForm& phi, const QuadForm& psi, const std::vector<SquareClass>& samples) {
  if (psi.dim() % 2 == 0) fail(ErrorCode::PreconditionFailed, "psi must be odd-dimensional");
  QuadForm t = tensor(phi, psi);
  for (const auto& a : samples)
    if (in_G(a, t) != in_G(a, phi)) return false;
  return true;
}

/// G(pi + rho) = G(pi) n G(rho) for dim pi < 2^(m+1) and rho in I^(m+1), on samples.
inline bool ap_trick_check(const QuadForm& pi, const QuadForm& rho, const std::vector<SquareClass>& samples) {
  QuadForm s = orthogonal_sum(pi, rho);
  for (const auto& a : samples) {
    bool both = (pi.dim() == 0 || in_G(a, pi)) && in_G(a, rho);
    if (in_G(a, s) != both) return false;
  }
  return true;
}

enum class LambdaStatus { NotInIntersection, InIntersectionWitnessed, FullNormWitnessFound, NonMembershipCitedAssumption };

inline std::string to_string(LambdaStatus s) {
  switch (s) {
    case LambdaStatus::NotInIntersection: return "NotInIntersection";
    case LambdaStatus::InIntersectionWitnessed: return "InIntersectionWitnessed";
    case LambdaStatus::FullNormWitnessFound: return "FullNormWitnessFound";
    case LambdaStatus::NonMembershipCitedAssumption: return "NonMembershipCitedAssumption";
  }
  return "";
}

struct LambdaReport {
  std::vector<long long> gens;
  Rational d;
  LambdaStatus status = LambdaStatus::InIntersectionWitnessed;
  std::vector<std::optional<ConicPoint>> conics;  // d = x^2 - a_i y^2
  std::optional<MultiQuadElement> full_norm;       // N_{L/K}(z) = d * scale^2
  Rational scale = 1;
  std::optional<CitedAssumption> citation;
  std::string note;
};

namespace detail {

// Bounded search for z in L with N(z) in d Q*^2; coordinates in [-b, b].
inline std::optional<std::pair<MultiQuadElement, Rational>> full_norm_search(const std::vector<long long>& gens, const Rational& d,
                                                                              int b) {
  MultiQuadElement z(gens);
  std::size_t n = z.size();
  std::vector<int> c(n, -b);
  long long total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 2 * b + 1;
  for (long long it = 0; it < total; ++it) {
    long long r = it;
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = static_cast<int>(r % (2 * b + 1)) - b;
      r /= 2 * b + 1;
      z.coords[i] = c[i];
    }
    if (z.is_zero()) continue;
    Rational nz = z.norm();
    if (nz == 0) continue;
    Rational q = nz / d;
    if (is_rational_square(q)) return std::make_pair(z, rational_sqrt(q));
  }
  return std::nullopt;
}

}  // namespace detail

/// Is d in the intersection of the norm groups N(Q(sqrt a_i)), and is it a full norm from L?
inline LambdaReport lambda_query(const std::vector<long long>& gens, const Rational& d, int full_search_bound = 1) {
  if (d == 0) fail(ErrorCode::ZeroArgument, "d must be nonzero");
  std::vector<SquareClass> cls;
  FieldTower q = FieldTower::rationals();
  for (long long g : gens) cls.push_back(class_of(g, q));
  if (multiquad_degree(cls, q) != (1LL << gens.size())) fail(ErrorCode::DegenerateExtension, "generators are dependent");
  LambdaReport rep{gens, d};
  bool all = true;
  for (long long g : gens) {
    rep.conics.push_back(conic_point(Rational(g), d));
    all = all && rep.conics.back().has_value();
  }
  if (!all) {
    rep.status = LambdaStatus::NotInIntersection;
    return rep;
  }
  if (is_rational_square(d)) {
    rep.full_norm = MultiQuadElement(gens, 1);
    rep.scale = rational_sqrt(d);
    rep.scale = 1 / rep.scale;
    rep.status = LambdaStatus::FullNormWitnessFound;
    return rep;
  }
  if (gens.size() == 1) {
    MultiQuadElement z(gens);
    z.coords = {rep.conics[0]->x, rep.conics[0]->y};
    rep.full_norm = z;
    rep.status = LambdaStatus::FullNormWitnessFound;
    return rep;
  }
  if (gens.size() == 2) {
    auto w = biquadratic_combine(d, gens[0], gens[1], *rep.conics[0], *rep.conics[1]);
    rep.full_norm = w.z;
    rep.scale = w.scale;
    rep.status = LambdaStatus::FullNormWitnessFound;
    return rep;
  }
  if (auto f = detail::full_norm_search(gens, d, full_search_bound)) {
    rep.full_norm = f->first;
    rep.scale = f->second;
    rep.status = LambdaStatus::FullNormWitnessFound;
    return rep;
  }
  rep.note = "in the intersection of the quadratic norm groups; no full norm found within the bound";
  return rep;
}

/// Sivatski instance over Q(s): d lies in every N(K(sqrt a_i)) by the stored witnesses; non-membership in the full norm group is cited.
struct LambdaQsReport {
  LambdaStatus status = LambdaStatus::InIntersectionWitnessed;
  std::vector<SivatskiWitness> witnesses;
  std::optional<CitedAssumption> citation;
};

inline LambdaQsReport lambda_query(const SivatskiInstance& inst) {
  LambdaQsReport r;
  if (!verify_sivatski_instance(inst)) {
    r.status = LambdaStatus::NotInIntersection;
    return r;
  }
  r.witnesses = inst.generated;
  r.citation = inst.cited;
  r.status = LambdaStatus::NonMembershipCitedAssumption;
  return r;
}

}  // namespace qfkit
