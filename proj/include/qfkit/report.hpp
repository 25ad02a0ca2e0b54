#pragma once

// JSON encoding of elements, forms, certificates and construction bundles.
// Elements use a structured encoding so that certificates round-trip exactly.

#include <string>
#include <vector>

#include <json.hpp>

#include "qfkit/constructions.hpp"
#include "qfkit/expr.hpp"

namespace qfkit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "qfkit.report/1";
inline constexpr const char* kCertificateSchema = "qfkit.certificate/1";

namespace detail {

[[noreturn]] inline void bad_json(const std::string& what) { fail(ErrorCode::ParseError, "certificate JSON: " + what); }

inline const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_json(std::string("missing key '") + key + "'");
  return j.at(key);
}

}  // namespace detail

inline Json rational_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const Json& j) {
  if (!j.is_string()) detail::bad_json("rational must be a string");
  try {
    return Rational(j.get<std::string>());
  } catch (const std::exception&) {
    detail::bad_json("bad rational '" + j.get<std::string>() + "'");
  }
}

inline Json poly_json(const Poly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(rational_json(c));
  return a;
}

inline Poly poly_from_json(const Json& j) {
  if (!j.is_array()) detail::bad_json("polynomial must be an array");
  std::vector<Rational> cs;
  for (const auto& c : j) cs.push_back(rational_from_json(c));
  return Poly(std::move(cs));
}

inline Json element_json(const MonomialElement& m, const FieldTower& k) {
  Json polys = Json::array();
  for (const auto& [f, e] : m.coeff.polys) polys.push_back({{"poly", poly_json(f)}, {"e", e}});
  std::vector<int> exps = m.exps;
  exps.resize(k.depth(), 0);
  return {{"str", to_string(m, k)}, {"q", rational_json(m.coeff.q)}, {"polys", polys}, {"exps", exps}};
}

inline MonomialElement element_from_json(const Json& j, const FieldTower& k) {
  MonomialElement m;
  m.coeff.q = rational_from_json(detail::field_of(j, "q"));
  if (j.contains("polys")) {
    for (const auto& p : j.at("polys")) m.coeff.polys[poly_from_json(detail::field_of(p, "poly"))] = detail::field_of(p, "e").get<int>();
  }
  const Json& e = detail::field_of(j, "exps");
  if (!e.is_array() || e.size() != k.depth()) detail::bad_json("exps must have one entry per Laurent step");
  m.exps = e.get<std::vector<int>>();
  if (m.coeff.q == 0) fail(ErrorCode::ZeroElement, "certificate JSON: zero element");
  return m;
}

inline Json class_json(const SquareClass& c, const FieldTower& k) { return to_string(c, k); }

inline Json form_json(const QuadForm& f) {
  Json es = Json::array();
  for (const auto& c : f.entries) es.push_back(class_json(c, f.field));
  return {{"field", f.field.spec()}, {"dim", f.dim()}, {"entries", es}, {"str", f.str()}};
}

inline Json certificate_json(const HypCertificate& c) {
  const auto& k = c.field;
  Json tower = Json::array();
  for (const auto& g : c.tower) tower.push_back(element_json(g, k));
  Json norms = Json::array();
  for (const auto& f : c.norms) {
    Json coords = Json::array();
    for (const auto& x : f.coords) coords.push_back(rational_json(x));
    Json att = {{"kind", f.attestation.kind == Attestation::Kind::Symbolic ? "symbolic" : "decided"}};
    if (f.attestation.kind == Attestation::Kind::Symbolic) {
      Json pairs = Json::array();
      for (const auto& [i, jj] : f.attestation.matching) pairs.push_back({i, jj});
      att["matching"] = pairs;
    } else {
      att["verdict"] = f.attestation.verdict;
    }
    norms.push_back({{"subset", f.subset},
                     {"coords", coords},
                     {"mono", element_json(f.mono, k)},
                     {"mask", f.mask},
                     {"exponent", f.exponent},
                     {"attestation", att}});
  }
  return {{"schema", kCertificateSchema},
          {"field", k.spec()},
          {"procedure", c.procedure},
          {"target", element_json(c.target, k)},
          {"tower", tower},
          {"degree", c.degree()},
          {"square_factor", element_json(c.square_factor, k)},
          {"norms", norms}};
}

inline HypCertificate certificate_from_json(const Json& j) {
  using detail::field_of;
  if (!j.is_object()) detail::bad_json("certificate must be an object");
  if (j.contains("schema") && j.at("schema") != kCertificateSchema) detail::bad_json("unknown schema");
  HypCertificate c;
  c.field = parse_field(field_of(j, "field").get<std::string>());
  const auto& k = c.field;
  c.procedure = j.value("procedure", "");
  c.target = element_from_json(field_of(j, "target"), k);
  for (const auto& g : field_of(j, "tower")) c.tower.push_back(element_from_json(g, k));
  c.square_factor = element_from_json(field_of(j, "square_factor"), k);
  for (const auto& n : field_of(j, "norms")) {
    NormFactor f;
    f.subset = field_of(n, "subset").get<std::vector<std::size_t>>();
    for (const auto& x : field_of(n, "coords")) f.coords.push_back(rational_from_json(x));
    f.mono = element_from_json(field_of(n, "mono"), k);
    f.mask = field_of(n, "mask").get<unsigned>();
    f.exponent = field_of(n, "exponent").get<int>();
    const Json& a = field_of(n, "attestation");
    std::string kind = field_of(a, "kind").get<std::string>();
    if (kind == "symbolic") {
      f.attestation.kind = Attestation::Kind::Symbolic;
      for (const auto& p : field_of(a, "matching")) {
        if (!p.is_array() || p.size() != 2) detail::bad_json("matching entries are pairs");
        f.attestation.matching.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>());
      }
    } else if (kind == "decided") {
      f.attestation.kind = Attestation::Kind::Decided;
      f.attestation.verdict = field_of(a, "verdict").get<bool>();
    } else {
      detail::bad_json("unknown attestation kind '" + kind + "'");
    }
    c.norms.push_back(std::move(f));
  }
  return c;
}

inline Json cited_json(const CitedAssumption& c) { return {{"claim", c.claim}, {"reference", c.reference}}; }

inline Json reduction_json(const ReductionReport& r) {
  Json qs = Json::array();
  for (const auto& q : r.queries)
    qs.push_back({{"a", class_json(q.a, r.rho.field)}, {"transported", q.transported}, {"direct", q.direct}});
  Json j = {{"rho", form_json(r.rho)},
            {"anisotropic_dim", r.anisotropic_dim},
            {"in_I2", r.in_I2},
            {"verdict", to_string(r.verdict)},
            {"route", r.route},
            {"queries", qs}};
  if (r.odd_factor) j["odd_factor"] = class_json(*r.odd_factor, r.rho.field);
  return j;
}

inline Json bundle_json(const ConstructionBundle& b) {
  Json claims = Json::array();
  for (const auto& c : b.claims) claims.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
  Json gens = Json::array();
  for (const auto& g : b.lambda_generators) gens.push_back(class_json(g, b.field.base_field()));
  Json j = {{"name", b.name}, {"field", b.field.spec()}, {"rho", form_json(b.rho)}, {"lambda_generators", gens}, {"claims", claims}};
  if (b.reduction) j["reduction"] = reduction_json(*b.reduction);
  j["notes"] = b.notes;
  return j;
}

}  // namespace qfkit
