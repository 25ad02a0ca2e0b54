#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "qfkit/cli.hpp"

using namespace qfkit;

namespace {

struct Run {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Run run_json(std::vector<std::string> args) {
  args.push_back("--json");
  args.push_back("--no-timing");
  return run(std::move(args));
}

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(Parser, Fields) {
  EXPECT_EQ(parse_field("Q").spec(), "Q");
  EXPECT_EQ(parse_field("F7[[u]]").spec(), "F7[[u]]");
  EXPECT_EQ(parse_field("Q(s)((t1))((t2))").spec(), "Q(s)[[t1]][[t2]]");
  EXPECT_EQ(parse_field(" Q [[t1]]").depth(), 1u);
  for (const char* bad : {"", "R", "F", "F4", "Q[[t]", "Q[[t]][[t]]", "Q(s)[[s]]", "Q[[]]"}) {
    EXPECT_THROW(parse_field(bad), Error) << bad;
  }
}

TEST(Parser, ElementsAndForms) {
  auto k = parse_field("Q(s)[[t1]][[t2]]");
  auto x = parse_element("-3/4*s^2*t1^-3/t2", k);
  EXPECT_EQ(x.exps, (std::vector<int>{-3, -1}));
  EXPECT_EQ(x.coeff.q, Rational(-3, 4));
  EXPECT_EQ(parse_element("(s+1)*(s-1)", k).coeff.polys.size(), 1u);
  EXPECT_EQ(parse_form("pfi(2,3)", parse_field("Q")).str(), "<1,-2,-3,6>");
  EXPECT_EQ(parse_form("pfi()", parse_field("Q")).str(), "<1>");
  EXPECT_EQ(parse_form("H(2)", parse_field("Q")).dim(), 4u);
  EXPECT_EQ(parse_form("<1,2> + <3>", parse_field("Q")).str(), "<1,2,3>");
  EXPECT_EQ(parse_form("<1,2> - <3>", parse_field("Q")).str(), "<1,2,-3>");
  EXPECT_EQ(parse_form("5*<1,2>", parse_field("Q")).str(), "<5,10>");
  EXPECT_EQ(parse_form("<1,2>*<1,3>", parse_field("Q")).str(), "<1,3,2,6>");
  EXPECT_EQ(parse_form("t1*pfi(2)", parse_field("Q[[t1]]")).str(), "<t1,-2*t1>");
}

TEST(Parser, ErrorsCarryColumns) {
  auto Q = parse_field("Q");
  try {
    parse_form("<1,,2>", Q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("column 4"), std::string::npos) << e.what();
  }
  try {
    parse_form("<1,2", Q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos) << e.what();
  }
  try {
    parse_form("<1,x>", Q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("column 4"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_form("<1,0>", Q), Error);
  EXPECT_THROW(parse_form("<1,2>/3", Q), Error);
  EXPECT_THROW(parse_form("<t1+1>", parse_field("Q[[t1]]")), Error);
  EXPECT_THROW(parse_form("<s>", Q), Error);
  EXPECT_THROW(parse_element("<1>", Q), Error);
}

TEST(Parser, PrintedFormsReparse) {
  std::mt19937 rng(7);
  auto k = parse_field("Q(s)[[t1]][[t2]]");
  const char* atoms[] = {"1", "-1", "2", "-3", "s", "(s^2+8)", "(s-1)", "t1", "t2", "5/7", "(2*s+2)"};
  for (int it = 0; it < 200; ++it) {
    std::string src = "<";
    int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      if (i) src += ",";
      int m = 1 + static_cast<int>(rng() % 3);
      for (int j = 0; j < m; ++j) src += std::string(j ? "*" : "") + atoms[rng() % 11];
    }
    src += ">";
    QuadForm f = parse_form(src, k);
    try {
      EXPECT_EQ(parse_form(f.str(), k).str(), f.str()) << src;
    } catch (const Error& e) {
      ADD_FAILURE() << f.str() << ": " << e.what();
      break;
    }
  }
}

TEST(Cli, SpecExamples) {
  auto r = run_json({"decide", "hyperbolic", "--field", "Q[[t1]]", "--form", "<1,-1*t1,t1,-1>"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.json()["result"]["hyperbolic"], true);

  r = run_json({"decide", "--form", "<1,,2>"});
  EXPECT_EQ(r.code, 2);
  auto d = r.json()["diagnostics"][0];
  EXPECT_EQ(d["code"], "ParseError");
  EXPECT_NE(d["message"].get<std::string>().find("column 4"), std::string::npos);

  r = run_json({"group", "test-g", "--a", "2", "--form", "pfi(2)", "--field", "Q"});
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = r.json();
  EXPECT_EQ(j["result"]["in_G"], true);
  EXPECT_EQ(j["result"]["witness"]["holds"], true);

  r = run({"construct", "fork3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("fork3"), std::string::npos);
}

TEST(Cli, ReportShape) {
  auto j = run({"construct", "fork3", "--json"}).json();
  for (const char* key : {"schema", "command", "status", "result", "certificates", "citedAssumptions", "diagnostics", "timing"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["command"]["verb"], "construct");
  EXPECT_EQ(j["command"]["params"]["example"], "fork3");
  EXPECT_EQ(j["result"]["recheck"], true);
  bool found = false;
  for (const auto& c : j["result"]["claims"])
    if (c["name"] == "anisotropic") found = c["status"] == "verified";
  EXPECT_TRUE(found);
}

TEST(Cli, MathematicalNegativesExitZero) {
  auto r = run_json({"decide", "--form", "<1,1,1>"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["anisotropic"], true);
  r = run_json({"group", "test-g", "--a", "3", "--form", "pfi(-1)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["in_G"], false);
  r = run_json({"group", "test-h", "--a", "3", "--form", "pfi(-1)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["in_H"], "no");
  r = run_json({"lambda", "--gens", "2,3", "--d", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["status"], "NotInIntersection");
}

TEST(Cli, ErrorTaxonomyExitTwo) {
  struct Case {
    std::vector<std::string> args;
    std::string code;
  };
  std::vector<Case> cases = {
      {{"decide", "--form", "<1,,2>"}, "ParseError"},
      {{"decide", "--form", "<1,0>"}, "ZeroSlot"},
      {{"decide", "--field", "F4", "--form", "<1>"}, "BadField"},
      {{"decide", "--field", "Q[[t]][[t]]", "--form", "<1>"}, "BadField"},
      {{"construct", "no-such-example"}, "UnknownExample"},
      {{"cert", "pfister", "--a", "3", "--form", "pfi(-1)"}, "NotASimilarityFactor"},
      {{"cert", "torsion", "--a", "3", "--form", "<1,1>"}, "NotTorsion"},
      {{"cert", "pfister", "--a", "2", "--field", "Q[[t]]", "--form", "pfi(t)"}, "UnsupportedField"},
      {{"lambda", "--gens", "2,8", "--d", "3"}, "DegenerateExtension"},
      {{"lambda", "sivatski", "--a1", "2", "--a2", "3", "--d", "5", "--r", "3"}, "PreconditionFailed"},
      {{"decide", "--field", "Q(s)[[t]]", "--form", "<1,1,s,t>"}, "UndecidableLayer"},
      {{"verify", "--cert", "/nonexistent/file.json"}, "ParseError"},
      {{"frobnicate"}, "ParseError"},
      {{}, "ParseError"},
  };
  for (const auto& c : cases) {
    auto r = run_json(c.args);
    EXPECT_EQ(r.code, 2) << c.code << "\n" << r.out;
    auto j = r.json();
    EXPECT_EQ(j["status"], "error");
    ASSERT_FALSE(j["diagnostics"].empty());
    EXPECT_EQ(j["diagnostics"][0]["code"], c.code) << r.out;
  }
}

TEST(Cli, Deterministic) {
  std::vector<std::vector<std::string>> cmds = {
      {"construct", "fork3"},
      {"cert", "height2", "--a", "2", "--form", "<1,1,1,-7>"},
      {"invariants", "--form", "<1,2,3,5>"},
      {"lambda", "--gens", "2,3", "--d", "-2"},
  };
  for (const auto& c : cmds) {
    auto a = run_json(c), b = run_json(c);
    EXPECT_EQ(a.out, b.out);
    auto v = c;
    v.push_back("--json");
    auto x = run(v).json(), y = run(v).json();
    x.erase("timing");
    y.erase("timing");
    EXPECT_EQ(x.dump(), y.dump());
  }
}

TEST(Cli, CertificatesRoundTrip) {
  std::vector<std::vector<std::string>> cmds = {
      {"cert", "pfister", "--a", "2", "--form", "pfi(-1,-7)", "--field", "Q"},
      {"cert", "two-pfister", "--a", "2", "--pi", "pfi(-1)", "--rho", "pfi(-1,-7)", "--c1", "1", "--c2", "3"},
      {"cert", "torsion", "--a", "5", "--form", "<1,-2,-3,6>"},
      {"cert", "in-g-h", "--a", "2", "--form", "<1,1,1,-7>"},
      {"cert", "odd-simfactor", "--field", "F5[[t1]]", "--form", "<1,2,t1,2*t1>"},
      {"group", "test-g", "--a", "2", "--form", "pfi(2)"},
      {"group", "test-h", "--a", "-t1", "--field", "Q[[t1]]", "--form", "<1,1,t1,t1>"},
  };
  int total = 0;
  for (const auto& c : cmds) {
    auto r = run_json(c);
    ASSERT_EQ(r.code, 0) << r.out;
    auto j = r.json();
    for (const auto& cert : j["certificates"]) {
      ++total;
      std::string path = write_temp("cert.json", cert.dump());
      auto v = run_json({"verify", "--cert", path});
      ASSERT_EQ(v.code, 0) << v.out;
      EXPECT_EQ(v.json()["result"]["verified"], true) << cert.dump();
    }
    std::string path = write_temp("report.json", r.out);
    auto v = run_json({"verify", "--cert", path});
    if (!j["certificates"].empty()) EXPECT_EQ(v.json()["result"]["verified"], true);
  }
  EXPECT_GE(total, 6);
}

TEST(Cli, TamperedCertificateIsRejected) {
  auto j = run_json({"cert", "pfister", "--a", "2", "--form", "pfi(-1,-7)"}).json();
  Json cert = j["certificates"][0];
  Json bad = cert;
  bad["target"]["q"] = "3";
  auto r = run_json({"verify", "--cert", write_temp("bad.json", bad.dump())});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["verified"], false);
  EXPECT_EQ(r.json()["result"]["certificates"][0]["diagnostic"], "NormMismatch");
  bad = cert;
  bad["norms"][0]["coords"][0] = "zz";
  r = run_json({"verify", "--cert", write_temp("bad2.json", bad.dump())});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.json()["diagnostics"][0]["code"], "ParseError");
}

TEST(Cli, ParamsEchoed) {
  auto j = run_json({"group", "test-g", "--a", "2", "--form", "pfi(2)", "--seed", "9", "--search-bound", "50"}).json();
  EXPECT_EQ(j["command"]["params"]["a"], "2");
  EXPECT_EQ(j["command"]["params"]["seed"], "9");
  EXPECT_EQ(j["command"]["params"]["search-bound"], "50");
  EXPECT_EQ(j["command"]["params"]["query"], "test-g");
}

TEST(Cli, Selftest) {
  auto r = run_json({"selftest"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.json()["result"]["all_ok"], true);
}

TEST(Cli, SivatskiLambda) {
  auto r = run_json({"lambda", "sivatski", "--a1", "2", "--a2", "3", "--d=-2", "--r", "4"});
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = r.json();
  EXPECT_EQ(j["result"]["status"], "NonMembershipCitedAssumption");
  EXPECT_EQ(j["result"]["witnesses"].size(), 2u);
  EXPECT_EQ(j["citedAssumptions"].size(), 1u);
}
