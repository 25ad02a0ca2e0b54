#pragma once

// Command-line front end. run_cli parses argv, dispatches one verb and writes a
// human-readable or JSON report. Exit codes: 0 on success (including negative
// mathematical answers), 2 on errors.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfkit/report.hpp"

namespace qfkit {

struct Report {
  std::string verb;
  Json params = Json::object();
  std::string status = "ok";
  Json result = Json::object();
  Json certificates = Json::array();
  Json cited = Json::array();
  Json diagnostics = Json::array();
  double elapsed_ms = 0;

  Json json(bool with_timing = true) const {
    Json j = {{"schema", kReportSchema},
              {"command", {{"verb", verb}, {"params", params}}},
              {"status", status},
              {"result", result},
              {"certificates", certificates},
              {"citedAssumptions", cited},
              {"diagnostics", diagnostics}};
    if (with_timing) j["timing"] = {{"elapsed_ms", elapsed_ms}};
    return j;
  }
};

struct CliOptions {
  std::string field = "Q";
  std::string form, a, pi, rho, c1 = "1", c2 = "1", target, d, cert_path;
  std::string query, procedure, example;
  std::vector<long long> gens;
  long long a1 = 2, a2 = 3, search_bound = 0;
  int r = 3, n = 4, full_bound = 1;
  unsigned long long seed = 1;
  bool json = false, no_timing = false;
};

namespace cli {

inline Json diag(ErrorCode c, std::string msg) {
  std::string prefix = std::string(to_string(c)) + ": ";
  if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
  return {{"code", std::string(to_string(c))}, {"number", static_cast<int>(c)}, {"message", msg}};
}

inline QuadForm form_arg(const CliOptions& o, const std::string& src, const char* name) {
  if (src.empty()) fail(ErrorCode::ParseError, std::string("missing --") + name);
  return parse_form(src, parse_field(o.field));
}

inline MonomialElement element_arg(const CliOptions& o, const std::string& src, const char* name) {
  if (src.empty()) fail(ErrorCode::ParseError, std::string("missing --") + name);
  return parse_element(src, parse_field(o.field));
}

inline Rational rational_arg(const std::string& src, const char* name) {
  if (src.empty()) fail(ErrorCode::ParseError, std::string("missing --") + name);
  return parse_element(src, FieldTower::rationals()).coeff.q;
}

inline Json tri(Tri t) { return to_string(t); }

inline void add_certificate(Report& rep, const HypCertificate& c, const QuadForm& phi) {
  Json j = certificate_json(c);
  j["form"] = phi.str();
  VerifyResult v = verify_certificate(c, phi);
  rep.certificates.push_back(j);
  rep.result["verified"] = v.ok;
  if (!v.ok) rep.diagnostics.push_back({{"code", v.diagnostic}, {"message", v.detail}});
}

inline void run_decide(const CliOptions& o, Report& rep) {
  QuadForm phi = form_arg(o, o.form, "form");
  std::string q = o.query.empty() ? "all" : o.query;
  rep.result["form"] = form_json(phi);
  rep.result["query"] = q;
  bool all = q == "all";
  if (!all && q != "hyperbolic" && q != "isotropic" && q != "anisotropic" && q != "witt-index" && q != "anisotropic-dim")
    fail(ErrorCode::ParseError, "unknown decide query '" + q + "'");
  int an = anisotropic_dim(phi);
  int dim = static_cast<int>(phi.dim());
  if (all || q == "hyperbolic") rep.result["hyperbolic"] = an == 0;
  if (all || q == "isotropic") rep.result["isotropic"] = an < dim;
  if (all || q == "anisotropic") rep.result["anisotropic"] = an == dim;
  if (all || q == "witt-index") rep.result["witt_index"] = (dim - an) / 2;
  if (all || q == "anisotropic-dim") rep.result["anisotropic_dim"] = an;
}

inline void run_invariants(const CliOptions& o, Report& rep) {
  QuadForm phi = form_arg(o, o.form, "form");
  const auto& k = phi.field;
  rep.result["form"] = form_json(phi);
  rep.result["dim"] = phi.dim();
  rep.result["discriminant"] = class_json(discriminant(phi), k);
  rep.result["determinant"] = class_json(determinant(phi), k);
  auto symbols = [&](const BrauerClass2& b) {
    Json a = Json::array();
    for (const auto& [x, y] : b.symbols) a.push_back({class_json(x, k), class_json(y, k)});
    return a;
  };
  try {
    BrauerClass2 hw = hasse_witt(phi), cl = clifford_class(phi);
    rep.result["hasse_witt"] = symbols(hw);
    rep.result["clifford_symbols"] = symbols(cl);
    rep.result["clifford_trivial"] = is_trivial(cl);
    if (cl.has_local()) {
      Json loc = Json::object();
      for (const auto& [p, v] : cl.local) loc[p == 0 ? std::string("real") : std::to_string(p)] = v;
      rep.result["clifford_local"] = loc;
    }
  } catch (const Error& e) {
    rep.result["clifford_trivial"] = "unknown";
    rep.diagnostics.push_back(diag(e.code(), e.what()));
  }
  Json in = Json::object();
  for (int n = 1; n <= 3; ++n) {
    try {
      in["I" + std::to_string(n)] = tri(in_In(phi, n));
    } catch (const Error& e) {
      in["I" + std::to_string(n)] = "unknown";
      rep.diagnostics.push_back(diag(e.code(), e.what()));
    }
  }
  rep.result["in_I"] = in;
}

// a in G(<x,y>) over Q iff a = X^2 + xy Y^2.
inline void binary_witness(const Rational& a, const QuadForm& phi, Report& rep) {
  if (phi.dim() != 2 || !detail::is_q_base(phi.field)) return;
  Rational xy = Rational(phi[0].rat()) * Rational(phi[1].rat());
  auto c = conic_solve(-xy, a);
  if (!c.point) return;
  Rational check = c.point->x * c.point->x + xy * c.point->y * c.point->y;
  rep.result["witness"] = {{"kind", "norm"},
                          {"equation", "a = x^2 + (" + to_string(xy) + ") y^2"},
                          {"x", rational_json(c.point->x)},
                          {"y", rational_json(c.point->y)},
                          {"holds", check == a}};
}

inline void run_group(const CliOptions& o, Report& rep) {
  QuadForm phi = form_arg(o, o.form, "form");
  MonomialElement a = element_arg(o, o.a, "a");
  std::string q = o.query.empty() ? "test-g" : o.query;
  rep.result["form"] = form_json(phi);
  rep.result["a"] = element_json(a, phi.field);
  rep.result["query"] = q;
  bool g = in_G(a, phi);
  if (q == "test-g") {
    rep.result["in_G"] = g;
    if (!g) return;
    if (detail::is_q_base(phi.field)) {
      binary_witness(a.coeff.q, phi, rep);
      try {
        add_certificate(rep, in_G_H_certificate(a.coeff.q, phi), phi);
      } catch (const Error& e) {
        rep.diagnostics.push_back(diag(e.code(), e.what()));
      }
    }
  } else if (q == "test-h") {
    if (!g) {
      rep.result["in_H"] = "no";
      rep.result["reason"] = "a is not in G(phi)";
      return;
    }
    if (!detail::is_q_base(phi.field)) {
      auto r = odd_simfactor_certificate(phi, a);
      if (r.cert && verify_certificate(*r.cert, phi).ok) {
        rep.result["in_H"] = "yes";
        add_certificate(rep, *r.cert, phi);
      } else {
        rep.result["in_H"] = "unknown";
        rep.result["reason"] = r.reason;
      }
      return;
    }
    try {
      add_certificate(rep, in_G_H_certificate(a.coeff.q, phi), phi);
      rep.result["in_H"] = "yes";
    } catch (const Error& e) {
      rep.result["in_H"] = "unknown";
      rep.diagnostics.push_back(diag(e.code(), e.what()));
    }
  } else if (q == "beta-step") {
    BetaStep s = beta_step(a.coeff.q, phi);
    rep.result["d"] = s.d;
    rep.result["witt_index_after"] = s.witt_index;
    rep.result["conic"] = {{"x", rational_json(s.witness.x)}, {"y", rational_json(s.witness.y)}};
  } else {
    fail(ErrorCode::ParseError, "unknown group query '" + q + "'");
  }
}

inline void run_cert(const CliOptions& o, Report& rep) {
  const std::string& p = o.procedure;
  rep.result["procedure"] = p;
  if (p == "odd-simfactor") {
    QuadForm phi = form_arg(o, o.form, "form");
    std::optional<SquareClass> target;
    if (!o.a.empty()) target = canonical_square_class(element_arg(o, o.a, "a"), phi.field);
    auto r = odd_simfactor_certificate(phi, target);
    rep.result["found"] = r.found;
    if (r.found) rep.result["t"] = class_json(r.t, phi.field);
    if (!r.reason.empty()) rep.result["reason"] = r.reason;
    if (r.cert) add_certificate(rep, *r.cert, phi);
    return;
  }
  Rational a = rational_arg(o.a, "a");
  if (p == "two-pfister") {
    QuadForm pi = form_arg(o, o.pi, "pi"), rho = form_arg(o, o.rho, "rho");
    Rational c1 = rational_arg(o.c1, "c1"), c2 = rational_arg(o.c2, "c2");
    QuadForm phi = orthogonal_sum(scale(detail::qelt(c1), pi), scale(detail::qelt(c2), rho));
    rep.result["form"] = form_json(phi);
    add_certificate(rep, two_pfister_certificate(a, pi, rho, c1, c2), phi);
    return;
  }
  QuadForm phi = form_arg(o, o.form, "form");
  rep.result["form"] = form_json(phi);
  HypCertificate c;
  if (p == "pfister") c = pfister_hyp_certificate(a, phi);
  else if (p == "height2") c = height2_certificate(a, phi);
  else if (p == "torsion") c = torsion_hyp_certificate(a, phi);
  else if (p == "in-g-h") c = in_G_H_certificate(a, phi);
  else fail(ErrorCode::ParseError, "unknown certificate procedure '" + p + "'");
  add_certificate(rep, c, phi);
}

inline void run_lambda(const CliOptions& o, Report& rep) {
  if (o.query == "sivatski") {
    Rational d = rational_arg(o.d, "d");
    auto inst = sivatski_generate(o.a1, o.a2, d, o.r);
    auto r = lambda_query(inst);
    Json ws = Json::array();
    for (const auto& w : r.witnesses)
      ws.push_back({{"a", w.a.str()}, {"c", w.c}, {"norm_value", w.norm_value.str()}, {"identity_holds", w.identity_holds},
                    {"irreducible", w.irreducible}});
    rep.result = {{"field", "Q(s)"}, {"a1", o.a1}, {"a2", o.a2}, {"d", rational_json(d)}, {"r", o.r},
                  {"status", to_string(r.status)}, {"witnesses", ws}};
    if (r.citation) rep.cited.push_back(cited_json(*r.citation));
    return;
  }
  if (!o.query.empty()) fail(ErrorCode::ParseError, "unknown lambda mode '" + o.query + "'");
  if (o.gens.empty()) fail(ErrorCode::ParseError, "missing --gens");
  Rational d = rational_arg(o.d, "d");
  LambdaReport r = lambda_query(o.gens, d, o.full_bound);
  Json conics = Json::array();
  for (const auto& c : r.conics) {
    if (c) conics.push_back({{"x", rational_json(c->x)}, {"y", rational_json(c->y)}});
    else conics.push_back(nullptr);
  }
  rep.result = {{"gens", r.gens}, {"d", rational_json(r.d)}, {"status", to_string(r.status)}, {"conics", conics}};
  if (r.full_norm) {
    Json cs = Json::array();
    for (const auto& x : r.full_norm->coords) cs.push_back(rational_json(x));
    rep.result["full_norm"] = {{"coords", cs}, {"scale", rational_json(r.scale)}};
  }
  if (!r.note.empty()) rep.result["note"] = r.note;
  if (r.citation) rep.cited.push_back(cited_json(*r.citation));
}

inline void run_construct(const CliOptions& o, Report& rep) {
  if (o.example.empty() || o.example == "list") {
    rep.result["examples"] = example_names();
    return;
  }
  ConstructionBundle b = paper_example(o.example, o.n);
  rep.result = bundle_json(b);
  rep.result["recheck"] = recheck(b);
  for (const auto& c : b.citations) rep.cited.push_back(cited_json(c));
}

inline Json read_json_file(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot read " + path);
    buf << in.rdbuf();
  }
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("JSON: ") + e.what());
  }
}

inline void run_verify(const CliOptions& o, Report& rep) {
  if (o.cert_path.empty()) fail(ErrorCode::ParseError, "missing --cert");
  Json doc = read_json_file(o.cert_path);
  std::vector<Json> certs;
  if (doc.is_object() && doc.contains("certificates")) {
    for (const auto& c : doc.at("certificates")) certs.push_back(c);
  } else {
    certs.push_back(doc);
  }
  if (certs.empty()) fail(ErrorCode::NotFound, "no certificate in input");
  Json out = Json::array();
  bool all = true;
  for (const auto& cj : certs) {
    HypCertificate c = certificate_from_json(cj);
    std::string fs = !o.form.empty() ? o.form : cj.value("form", "");
    if (fs.empty()) fail(ErrorCode::ParseError, "certificate carries no form; pass --form");
    QuadForm phi = parse_form(fs, c.field);
    VerifyResult v = verify_certificate(c, phi);
    all = all && v.ok;
    Json e = {{"form", phi.str()}, {"procedure", c.procedure}, {"ok", v.ok}};
    if (!v.ok) e["diagnostic"] = v.diagnostic, e["detail"] = v.detail;
    out.push_back(e);
  }
  rep.result = {{"verified", all}, {"certificates", out}};
}

inline void run_selftest(const CliOptions&, Report& rep) {
  Json checks = Json::array();
  bool all = true;
  auto check = [&](const std::string& name, auto&& fn) {
    bool ok = false;
    std::string msg;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      msg = e.what();
    }
    all = all && ok;
    Json c = {{"name", name}, {"ok", ok}};
    if (!msg.empty()) c["error"] = msg;
    checks.push_back(c);
  };
  auto Q = FieldTower::rationals();
  check("pfister <<2,3>> expands to <1,-2,-3,6>", [&] { return pfister({2, 3}, Q).str() == "<1,-2,-3,6>"; });
  check("form printing round-trips", [&] {
    auto k = parse_field("Q(s)[[t1]][[t2]]");
    auto f = parse_form("<1, -t1, (s^2+8)*t2, -3/4*s*t1*t2>", k);
    return parse_form(f.str(), k).str() == f.str();
  });
  check("<1,-1*t1,t1,-1> is hyperbolic over Q((t1))",
        [&] { return is_hyperbolic(parse_form("<1,-1*t1,t1,-1>", parse_field("Q[[t1]]"))); });
  check("<1,1,1> is anisotropic over Q", [&] { return is_anisotropic(QuadForm::over_Q({1, 1, 1})); });
  check("pfister certificate verifies after JSON round-trip", [&] {
    QuadForm pi = pfister({-1, -7}, Q);
    auto c = pfister_hyp_certificate(2, pi);
    auto back = certificate_from_json(Json::parse(certificate_json(c).dump()));
    return verify_certificate(back, pi).ok;
  });
  check("fork3 claims recheck", [&] { return recheck(paper_example("fork3")); });
  rep.result = {{"checks", checks}, {"all_ok", all}};
  if (!all) {
    rep.status = "error";
    rep.diagnostics.push_back({{"code", "SelftestFailed"}, {"message", "at least one self-test failed"}});
  }
}

inline void print_human(std::ostream& out, const Report& rep) {
  out << "qfkit " << rep.verb << ": " << rep.status << "\n";
  for (const auto& [k, v] : rep.result.items()) {
    if (v.is_object() && v.contains("str")) out << "  " << k << ": " << v.at("str").get<std::string>() << "\n";
    else if (v.is_string()) out << "  " << k << ": " << v.get<std::string>() << "\n";
    else out << "  " << k << ": " << v.dump() << "\n";
  }
  for (const auto& c : rep.certificates)
    out << "  certificate: " << c.value("procedure", "") << ", tower degree " << c.value("degree", 0) << ", "
        << c.at("norms").size() << " norm factor(s)\n";
  for (const auto& c : rep.cited) out << "  cited: " << c.at("claim").get<std::string>() << " [" << c.at("reference").get<std::string>() << "]\n";
  for (const auto& d : rep.diagnostics) out << "  diagnostic: " << d.value("code", "") << ": " << d.value("message", "") << "\n";
}

}  // namespace cli

/// Runs one command; argv excludes the program name. Returns the process exit code.
inline int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  auto t0 = std::chrono::steady_clock::now();
  CliOptions o;
  Report rep;
  CLI::App app{"qfkit: exact quadratic form toolkit", "qfkit"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--field", o.field, "field spec: Q, Fp or Q(s), followed by [[t1]]...");
  app.add_flag("--json", o.json, "emit the machine-readable report");
  app.add_flag("--no-timing", o.no_timing, "omit timing from the JSON report");
  app.add_option("--search-bound", o.search_bound, "bound for candidate square classes (default from QFKIT_SEARCH_BOUND or 200)");
  app.add_option("--seed", o.seed, "seed echoed in the report");

  auto* decide = app.add_subcommand("decide", "hyperbolicity, isotropy, Witt index");
  decide->add_option("query", o.query, "hyperbolic | isotropic | anisotropic | witt-index | anisotropic-dim | all");
  decide->add_option("--form", o.form, "form expression")->required();

  auto* inv = app.add_subcommand("invariants", "discriminant, Clifford class, I^n membership");
  inv->add_option("--form", o.form, "form expression")->required();

  auto* group = app.add_subcommand("group", "similarity factor queries");
  group->add_option("query", o.query, "test-g | test-h | beta-step");
  group->add_option("--a", o.a, "element");
  group->add_option("--form", o.form, "form expression")->required();

  auto* cert = app.add_subcommand("cert", "hyperbolicity certificates");
  cert->add_option("procedure", o.procedure, "pfister | two-pfister | height2 | torsion | in-g-h | odd-simfactor")->required();
  cert->add_option("--a", o.a, "target element");
  cert->add_option("--form", o.form, "form expression");
  cert->add_option("--pi", o.pi, "first Pfister form (two-pfister)");
  cert->add_option("--rho", o.rho, "second Pfister form (two-pfister)");
  cert->add_option("--c1", o.c1, "scale of pi (two-pfister)");
  cert->add_option("--c2", o.c2, "scale of rho (two-pfister)");

  auto* lambda = app.add_subcommand("lambda", "membership in the norm-group quotient");
  lambda->add_option("mode", o.query, "empty for multiquadratic Q, or sivatski");
  lambda->add_option("--gens", o.gens, "generators a_i")->delimiter(',');
  lambda->add_option("--d", o.d, "element d");
  lambda->add_option("--a1", o.a1, "sivatski: a1");
  lambda->add_option("--a2", o.a2, "sivatski: a2");
  lambda->add_option("--r", o.r, "sivatski: number of generators");
  lambda->add_option("--full-bound", o.full_bound, "coordinate bound for the full norm search");

  auto* construct = app.add_subcommand("construct", "named constructions with claim ledgers");
  construct->add_option("example", o.example, "example name, or list");
  construct->add_option("--n", o.n, "fold count for fork-n");

  auto* verify = app.add_subcommand("verify", "check certificates from a JSON file");
  verify->add_option("--cert", o.cert_path, "certificate or report JSON, - for stdin")->required();
  verify->add_option("--form", o.form, "form, when the certificate does not carry one");

  app.add_subcommand("selftest", "quick internal consistency checks");

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  int code = 0;
  try {
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      fail(ErrorCode::ParseError, e.what());
    }
    CLI::App* sub = app.get_subcommands().front();
    rep.verb = sub->get_name();
    for (CLI::App* a : {&app, sub})
      for (const CLI::Option* opt : a->get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help") continue;
        auto res = opt->results();
        std::string key = opt->get_name();
        while (!key.empty() && key[0] == '-') key.erase(0, 1);
        rep.params[key] = res.size() == 1 ? Json(res[0]) : Json(res);
      }
    if (o.search_bound > 0) setenv("QFKIT_SEARCH_BOUND", std::to_string(o.search_bound).c_str(), 1);
    if (rep.verb == "decide") cli::run_decide(o, rep);
    else if (rep.verb == "invariants") cli::run_invariants(o, rep);
    else if (rep.verb == "group") cli::run_group(o, rep);
    else if (rep.verb == "cert") cli::run_cert(o, rep);
    else if (rep.verb == "lambda") cli::run_lambda(o, rep);
    else if (rep.verb == "construct") cli::run_construct(o, rep);
    else if (rep.verb == "verify") cli::run_verify(o, rep);
    else cli::run_selftest(o, rep);
    if (rep.status != "ok") code = 2;
  } catch (const Error& e) {
    rep.status = "error";
    rep.diagnostics.push_back(cli::diag(e.code(), e.what()));
    code = 2;
  } catch (const std::exception& e) {
    rep.status = "error";
    rep.diagnostics.push_back({{"code", "Internal"}, {"message", e.what()}});
    code = 2;
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (o.json) {
    out << rep.json(!o.no_timing).dump(2) << "\n";
  } else {
    cli::print_human(code == 0 ? out : err, rep);
  }
  return code;
}

}  // namespace qfkit
