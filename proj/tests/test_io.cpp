#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "tropical_fixtures.hpp"
#include "zpl/io.hpp"

using namespace zpl;
using namespace zpl_fixtures;

namespace {

template <class Fn>
std::string error_of(Fn&& fn) {
  try {
    fn();
  } catch (const ZplError& e) {
    return std::string(e.code()) + "|" + e.what();
  }
  return "";
}

bool round_trips(const Document& doc) {
  std::string once = serialize_document(doc);
  std::string twice = serialize_document(parse_document(once));
  return once == twice;
}

}  // namespace

TEST_CASE("documents survive a parse and serialize round trip") {
  REQUIRE(round_trips(complex_document(square_cone())));
  REQUIRE(round_trips(complex_document(folded_path().source)));
  REQUIRE(round_trips(cover_document(folded_path())));
  REQUIRE(round_trips(cover_document(mixed_index_cover())));

  PLFunction f;
  f.covectors["e0"] = {Rat(1, 3), Rat(-2, 3)};
  f.covectors["v0"] = {Rat(1, 3)};
  REQUIRE(round_trips(function_document(f)));

  AlphaMap a;
  a[{"v1", 0}] = Rat(2);
  a[{"E", 3}] = Rat(5, 7);
  REQUIRE(round_trips(decoration_document(a)));

  CombinatorialDivisor d;
  d.coefficients["v0"] = Rat(-1);
  d.coefficients["v1"] = Rat(22, 7);
  REQUIRE(round_trips(divisor_document(d)));
}

TEST_CASE("decorations and rationals stay exact through the wire format") {
  PLFunction f;
  f.covectors["e"] = {Rat(1, 3)};
  std::string text = serialize_document(function_document(f));
  REQUIRE(text.find("\"1/3\"") != std::string::npos);
  Document back = parse_document(text);
  REQUIRE(back.kind == "pl-function");
  REQUIRE(back.function.covectors.at("e")[0] == Rat(1, 3));
  REQUIRE(back.function.covectors.at("e")[0] != Rat(33333333, 100000000));

  // decorations ride along on faces
  PLComplex c = folded_path().source;
  Document doc = parse_document(serialize_document(complex_document(c)));
  REQUIRE(doc.complex.faces.at("v1").vertical);
  REQUIRE_FALSE(doc.complex.faces.at("v0").vertical);
  REQUIRE(*doc.complex.faces.at("v1").genus == 0);
  REQUIRE(doc.complex.faces.at("e0").residue_degree == 1);
  REQUIRE_FALSE(doc.complex.faces.at("v0").genus.has_value());

  // integers beyond 64 bits travel as decimal strings
  PLComplex big;
  Int huge("123456789012345678901234567890");
  big.faces["v"] = make_face(1, {{huge}}, {1});
  std::string btext = serialize_document(complex_document(big));
  REQUIRE(btext.find("\"123456789012345678901234567890\"") != std::string::npos);
  Document bback = parse_document(btext);
  REQUIRE(bback.complex.faces.at("v").rays[0][0] == huge);
}

TEST_CASE("schema errors carry the offending field path") {
  auto err = error_of([] { parse_document(R"({"version":"1","payload":{}})"); });
  REQUIRE(err.find("schema-error") != std::string::npos);
  REQUIRE(err.find("$.kind") != std::string::npos);

  err = error_of([] {
    parse_document(R"({"kind":"complex","version":"1","payload":{"faces":3,"embeddings":[]}})");
  });
  REQUIRE(err.find("$.payload.faces") != std::string::npos);

  err = error_of([] {
    parse_document(
        R"({"kind":"complex","version":"1","payload":{"faces":[{"id":"v","rank":1,"varpi":[1]}],"embeddings":[]}})");
  });
  REQUIRE(err.find(".rays") != std::string::npos);
  REQUIRE(err.find("missing") != std::string::npos);

  err = error_of([] {
    parse_document(
        R"({"kind":"complex","version":"1","payload":{"faces":[)"
        R"({"id":"v","rank":1,"rays":[[1]],"varpi":[1]},)"
        R"({"id":"v","rank":1,"rays":[[1]],"varpi":[1]}],"embeddings":[]}})");
  });
  REQUIRE(err.find("duplicate face id") != std::string::npos);

  err = error_of([] {
    parse_document(
        R"({"kind":"tropical-decoration","version":"1","payload":{"alpha":[)"
        R"({"ridge":"v","ray":0,"value":"1/2"},{"ridge":"v","ray":0,"value":"1/3"}]}})");
  });
  REQUIRE(err.find("duplicate alpha key") != std::string::npos);

  err = error_of([] {
    parse_document(
        R"({"kind":"divisor","version":"1","payload":{"coefficients":{"v0":"x/y"}}})");
  });
  REQUIRE(err.find("$.payload.coefficients.v0") != std::string::npos);
  REQUIRE(err.find("not a rational") != std::string::npos);

  err = error_of([] {
    parse_document(
        R"({"kind":"complex","version":"1","payload":{"faces":[],"embeddings":[)"
        R"({"sub":"a","super":"b","matrix":[[1,0],[1]]}]}})");
  });
  REQUIRE(err.find("ragged") != std::string::npos);

  err = error_of([] {
    parse_document(R"({"kind":"sandwich","version":"1","payload":{}})");
  });
  REQUIRE(err.find("unknown kind") != std::string::npos);
}

TEST_CASE("version and malformed input handling") {
  auto err = error_of([] {
    parse_document(R"({"kind":"divisor","version":"2","payload":{"coefficients":{}}})");
  });
  REQUIRE(err.find("version-unsupported") != std::string::npos);

  err = error_of([] { parse_document("{nope"); });
  REQUIRE(err.find("schema-error") != std::string::npos);
  REQUIRE(err.find("not valid JSON") != std::string::npos);

  err = error_of([] { parse_document(""); });
  REQUIRE(err.find("schema-error") != std::string::npos);

  err = error_of([] { read_file("/nonexistent/zpl-test-file.json"); });
  REQUIRE(err.find("input") != std::string::npos);
}

TEST_CASE("divisor and report emitters") {
  CombinatorialDivisor d;
  d.coefficients["v0"] = Rat(1, 2);
  d.coefficients["v1"] = Rat(0);
  d.coefficients["v2"] = Rat(-3);
  std::string line = divisor_text("D", d);
  REQUIRE(line.find("D = ") == 0);
  REQUIRE(line.find("1/2") != std::string::npos);
  REQUIRE(line.find("[v0]") != std::string::npos);
  REQUIRE(line.find("[v2]") != std::string::npos);
  REQUIRE(line.find("v1") == std::string::npos);
  REQUIRE(divisor_text("D", CombinatorialDivisor{}) == "D = 0");
  REQUIRE(divisor_text("", d).find("D") == std::string::npos);

  nlohmann::json dp = divisor_payload(d);
  REQUIRE(dp["coefficients"].contains("v0"));
  REQUIRE_FALSE(dp["coefficients"].contains("v1"));
  REQUIRE(dp["coefficients"]["v0"] == "1/2");

  Report ok;
  REQUIRE(report_text(ok) == "ok\n");
  Report badr;
  badr.violations.push_back({"varpi", "face x"});
  REQUIRE(report_text(badr).find("violation varpi: face x") != std::string::npos);
  REQUIRE(report_payload(badr)["ok"] == false);
  REQUIRE(report_payload(badr)["violations"][0]["code"] == "varpi");
}

TEST_CASE("balance and tropical report emitters") {
  BalanceReport b = balance_report(folded_path());
  std::string text = balance_text(b);
  REQUIRE(text.find("balanced") == 0);
  REQUIRE(text.find("local degree at v1: 2") != std::string::npos);
  REQUIRE(text.find("degree = 2") != std::string::npos);
  nlohmann::json bp = balance_payload(b);
  REQUIRE(bp["balanced"] == true);
  REQUIRE(bp["degree"] == 2);
  REQUIRE(bp["local_degrees"]["v0"] == 1);

  BalanceReport bu = balance_report(mixed_index_cover());
  std::string tu = balance_text(bu);
  REQUIRE(tu.find("unbalanced") == 0);
  REQUIRE(tu.find("unbalanced ridge v1") != std::string::npos);
  REQUIRE(balance_payload(bu)["degree"].is_null());

  TropicalComplex t{path_graph(2), solve_alpha(path_graph(2))};
  std::string tt = tropical_report_text(validate_tropical(t));
  REQUIRE(tt.find("ok") == 0);
  REQUIRE(tt.find("mult_b(v1) = 2") != std::string::npos);
  nlohmann::json tp = tropical_report_payload(validate_tropical(t));
  REQUIRE(tp["ok"] == true);
  REQUIRE(tp["mult_b"]["v1"] == "2");
}

TEST_CASE("ramification report emitters") {
  ComplexCover folded = folded_path();
  TropicalComplex ts{folded.source, solve_alpha(folded.source)};
  PLFunction delta = graph_function(folded.source, {{"v0", 1}, {"v1", 0}, {"v2", 1}});
  RHReport pass = rh_check(ts, folded, delta);
  std::string text = rh_text(pass);
  REQUIRE(text.find("riemann-hurwitz: pass") != std::string::npos);
  REQUIRE(text.find("[v1]") != std::string::npos);
  nlohmann::json jp = rh_payload(pass);
  REQUIRE(jp["ok"] == true);
  REQUIRE(jp["relative_canonical"]["coefficients"]["v1"] == "2");

  PLFunction zero = graph_function(folded.source, {{"v0", 0}, {"v1", 0}, {"v2", 0}});
  RHReport fail = rh_check(ts, folded, zero);
  std::string ft = rh_text(fail);
  REQUIRE(ft.find("riemann-hurwitz: fail") != std::string::npos);
  REQUIRE(ft.find("residual") != std::string::npos);
  REQUIRE(rh_payload(fail)["ok"] == false);
}
