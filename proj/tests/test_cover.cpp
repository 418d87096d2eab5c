#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "zpl/cover.hpp"
#include "zpl/measure.hpp"

using namespace zpl;
using namespace zpl_fixtures;

namespace {

bool has_violation(const Report& r, const std::string& code) {
  for (const Violation& v : r.violations)
    if (v.code == code) return true;
  return false;
}

ComplexCover identity_cover(const PLComplex& c) {
  ComplexCover phi;
  phi.source = c;
  phi.target = c;
  for (const auto& [id, f] : c.faces) {
    phi.face_map[id] = id;
    phi.lattice_maps[id] = IntMat::identity(f.rank);
  }
  return phi;
}

}  // namespace

TEST_CASE("reference covers validate") {
  REQUIRE(validate_cover(folded_path()).ok());
  REQUIRE(validate_cover(cycle_double_cover()).ok());
  REQUIRE(validate_cover(mixed_index_cover()).ok());
  REQUIRE(validate_cover(identity_cover(square_cone())).ok());
  REQUIRE(validate_complex(folded_path().source).ok());
  REQUIRE(validate_complex(folded_path().target).ok());
  REQUIRE(validate_complex(mixed_index_cover().source).ok());
}

TEST_CASE("cover validation rejections") {
  SUBCASE("face without image") {
    ComplexCover phi = folded_path();
    phi.face_map.erase("v0");
    REQUIRE(has_violation(validate_cover(phi), "missing-face"));
  }
  SUBCASE("face without lattice map") {
    ComplexCover phi = folded_path();
    phi.lattice_maps.erase("e0");
    REQUIRE(has_violation(validate_cover(phi), "missing-face"));
  }
  SUBCASE("rank drop") {
    ComplexCover phi = folded_path();
    phi.face_map.at("v0") = "g";
    REQUIRE(has_violation(validate_cover(phi), "dimension"));
  }
  SUBCASE("degenerate lattice map") {
    ComplexCover phi = folded_path();
    phi.lattice_maps.at("e0") = IntMat{{1, 1}, {1, 1}};
    REQUIRE(has_violation(validate_cover(phi), "not-injective"));
  }
  SUBCASE("cone not onto") {
    ComplexCover phi = folded_path();
    phi.lattice_maps.at("e0") = IntMat{{1, 1}, {0, 1}};
    REQUIRE(has_violation(validate_cover(phi), "image-cone"));
  }
  SUBCASE("covector mismatch") {
    ComplexCover phi = mixed_index_cover();
    phi.source.faces.at("e1").varpi = {1, 1};
    REQUIRE(has_violation(validate_cover(phi), "varpi"));
  }
  SUBCASE("non commuting square") {
    ComplexCover phi = folded_path();
    phi.lattice_maps.at("e1") = IntMat::identity(2);
    REQUIRE(has_violation(validate_cover(phi), "embedding-square"));
  }
  SUBCASE("missed target face") {
    ComplexCover phi = identity_cover(path_graph(1));
    phi.source.faces.erase("v1");
    phi.source.embeddings.erase(
        std::remove_if(phi.source.embeddings.begin(), phi.source.embeddings.end(),
                       [](const Embedding& e) { return e.sub == "v1"; }),
        phi.source.embeddings.end());
    phi.face_map.erase("v1");
    phi.lattice_maps.erase("v1");
    REQUIRE(has_violation(validate_cover(phi), "not-surjective"));
  }
}

TEST_CASE("local degrees of the folded path") {
  ComplexCover phi = folded_path();
  REQUIRE(local_degree(phi, "v0") == 1);
  REQUIRE(local_degree(phi, "v1") == 2);
  REQUIRE(local_degree(phi, "v2") == 1);
  BalanceReport b = balance_report(phi);
  REQUIRE(b.balanced);
  REQUIRE(b.degree_consistent);
  REQUIRE(b.degree == Int(2));
  REQUIRE(b.local_degrees.size() == 3);
  REQUIRE(b.unbalanced_ridges.empty());
}

TEST_CASE("local degree wants a ridge") {
  REQUIRE_THROWS_AS(local_degree(folded_path(), "e0"), ZplError);
}

TEST_CASE("unramified double cover of the cycle") {
  ComplexCover phi = cycle_double_cover();
  BalanceReport b = balance_report(phi);
  REQUIRE(b.balanced);
  REQUIRE(b.degree == Int(2));
  for (const auto& [r, d] : b.local_degrees) REQUIRE(d == 1);
}

TEST_CASE("identity cover has degree one") {
  BalanceReport b = balance_report(identity_cover(path_graph(3)));
  REQUIRE(b.balanced);
  REQUIRE(b.degree == Int(1));
}

TEST_CASE("mixed lattice indices break balancing") {
  ComplexCover phi = mixed_index_cover();
  REQUIRE(validate_cover(phi).ok());
  try {
    local_degree(phi, "v1");
    REQUIRE(false);
  } catch (const ZplError& e) {
    REQUIRE(e.code() == "unbalanced-at-ridge");
  }
  BalanceReport b = balance_report(phi);
  REQUIRE(!b.balanced);
  REQUIRE(b.unbalanced_ridges == std::vector<std::string>{"v1"});
  REQUIRE(b.failures.at("v1").find("unbalanced-at-ridge") != std::string::npos);
  // the outer ridges still have well defined local degrees
  REQUIRE(b.local_degrees.at("v0") == 1);
  REQUIRE(b.local_degrees.at("v2") == 2);
  CombinatorialDivisor w;
  w.coefficients["v1"] = 1;
  REQUIRE_THROWS_AS(pullback_cycle(phi, w), ZplError);
}

TEST_CASE("dilation covers") {
  for (Int e : {Int(2), Int(3), Int(5)}) {
    for (const PLComplex& c :
         {path_graph(3), cycle_graph(3), interval_half(), half_line(), square_cone()}) {
      ComplexCover phi = dilation_cover(c, e);
      CAPTURE(e.str());
      REQUIRE(validate_cover(phi).ok());
      REQUIRE(validate_complex(phi.source).ok());
      BalanceReport b = balance_report(phi);
      REQUIRE(b.balanced);
      REQUIRE(b.degree == e);
      // with unit multiplicities every lattice index is e and the chain
      // identity holds with residue degrees 1 on both sides
      bool unit = true;
      for (const auto& [id, f] : c.faces)
        for (const IVec& r : f.rays)
          if (dot(f.varpi, r) > 1) unit = false;
      if (unit) REQUIRE(multiplicity_chain_check(phi).ok());
    }
  }
}

TEST_CASE("dilation at a vertex of shared multiplicity needs residue data") {
  // e divides the vertex multiplicity, so the vertex lattice is unchanged
  // while the adjacent edge still picks up index 2
  ComplexCover phi = dilation_cover(interval_half(), 2);
  Report r = multiplicity_chain_check(phi);
  REQUIRE(!r.ok());
  phi.source.faces.at("v1").residue_degree = 2;
  REQUIRE(multiplicity_chain_check(phi).ok());
}

TEST_CASE("dilation by a divisor of every multiplicity is trivial") {
  // all multiplicities of the quarter interval are even, so the sublattices
  // are the full lattices and the cover is an isomorphism onto the unit edge
  ComplexCover phi = dilation_cover(interval_quarter(), 2);
  REQUIRE(validate_cover(phi).ok());
  BalanceReport b = balance_report(phi);
  REQUIRE(b.balanced);
  REQUIRE(b.degree == Int(1));
  for (const auto& [id, f] : phi.source.faces) {
    for (const IVec& r : f.rays) REQUIRE(dot(f.varpi, r) == 1);
  }
  REQUIRE(conformal_volume(phi.source.faces.at("e")).conformal_volume == Rat(1));
}

TEST_CASE("dilation stretches the unit edge to length e") {
  PLComplex c = path_graph(1);
  for (Int e : {Int(2), Int(3)}) {
    ComplexCover phi = dilation_cover(c, e);
    Rat v = conformal_volume(phi.source.faces.at("e0")).conformal_volume;
    REQUIRE(v == Rat(e) * conformal_volume(c.faces.at("e0")).conformal_volume);
  }
}

TEST_CASE("dilation rejections") {
  REQUIRE_THROWS_AS(dilation_cover(path_graph(1), 0), ZplError);
  REQUIRE_THROWS_AS(dilation_cover(path_graph(1), -3), ZplError);
  PLComplex conical;
  conical.faces["c"] = make_face(2, {{1, 0}, {0, 1}}, {0, 0});
  try {
    dilation_cover(conical, 2);
    REQUIRE(false);
  } catch (const ZplError& e) {
    REQUIRE(e.code() == "no-varpi");
  }
}

TEST_CASE("cycle pullback weights by local degree") {
  ComplexCover phi = folded_path();
  CombinatorialDivisor w;
  w.coefficients["u0"] = Rat(3);
  CombinatorialDivisor up = pullback_cycle(phi, w);
  REQUIRE(up.coefficients.size() == 2);
  REQUIRE(up.coefficients.at("v0") == Rat(3));
  REQUIRE(up.coefficients.at("v2") == Rat(3));
  w.coefficients = {{"u1", Rat(1, 2)}};
  up = pullback_cycle(phi, w);
  REQUIRE(up.coefficients.size() == 1);
  REQUIRE(up.coefficients.at("v1") == Rat(1));
  w.coefficients = {{"u0", Rat(0)}};
  REQUIRE(pullback_cycle(phi, w).coefficients.empty());
}

TEST_CASE("function pullback is composition with the cover") {
  ComplexCover phi = folded_path();
  PLFunction f = graph_function(phi.target, {{"u0", Rat(1, 3)}, {"u1", Rat(2)}});
  REQUIRE(validate_function(phi.target, f).ok());
  PLFunction g = pullback_function(phi, f);
  REQUIRE(validate_function(phi.source, g).ok());
  PLFunction expected = graph_function(
      phi.source, {{"v0", Rat(1, 3)}, {"v1", Rat(2)}, {"v2", Rat(1, 3)}});
  REQUIRE(g.covectors == expected.covectors);
}

TEST_CASE("function pullback through a dilation is composition") {
  PLComplex c = path_graph(1);
  ComplexCover phi = dilation_cover(c, 3);
  PLFunction f = graph_function(c, {{"v0", Rat(0)}, {"v1", Rat(1)}});
  PLFunction g = pullback_function(phi, f);
  REQUIRE(validate_function(phi.source, g).ok());
  for (const auto& [id, face] : phi.source.faces) {
    const IntMat& L = phi.lattice_maps.at(id);
    const QVec& tf = f.covectors.at(phi.face_map.at(id));
    for (const IVec& r : face.rays) {
      Rat lhs = 0, rhs = 0;
      for (int j = 0; j < face.rank; ++j) lhs += g.covectors.at(id)[j] * Rat(r[j]);
      IVec img = L.apply(r);
      for (size_t k = 0; k < img.size(); ++k) rhs += tf[k] * Rat(img[k]);
      REQUIRE(lhs == rhs);
    }
  }
  // the far vertex of the stretched edge sits at value 3
  Rat far = 0;
  const ConicalFace& e0 = phi.source.faces.at("e0");
  for (const IVec& r : e0.rays)
    if (dot(e0.varpi, r) == 1) far = std::max(far, dotQ(r, g.covectors.at("e0")));
  REQUIRE(far == Rat(3));
}

TEST_CASE("multiplicity chain bookkeeping") {
  SUBCASE("identity and unramified covers chain") {
    REQUIRE(multiplicity_chain_check(identity_cover(square_cone())).ok());
    REQUIRE(multiplicity_chain_check(cycle_double_cover()).ok());
  }
  SUBCASE("folded point needs residue degree two") {
    ComplexCover phi = folded_path();
    Report r = multiplicity_chain_check(phi);
    REQUIRE(has_violation(r, "chain"));
    phi.source.faces.at("v1").residue_degree = 2;
    REQUIRE(multiplicity_chain_check(phi).ok());
  }
}

TEST_CASE("subdivisions pull back through covers") {
  SUBCASE("through a dilation") {
    ComplexCover phi = dilation_cover(path_graph(1), 2);
    ComplexMap s = stellar_subdivide(phi.target, "e0", {1, 1});
    PullbackSubdivision out = pullback_subdivision(phi, s);
    REQUIRE(check_proper_subdivision(out.subdivision).ok());
    REQUIRE(out.subdivision.target.faces.size() == phi.source.faces.size());
    REQUIRE(validate_cover(out.lifted).ok());
    BalanceReport b = balance_report(out.lifted);
    REQUIRE(b.balanced);
    REQUIRE(b.degree == Int(2));
  }
  SUBCASE("through the folded path") {
    ComplexCover phi = folded_path();
    ComplexMap s = stellar_subdivide(phi.target, "g", {1, 1});
    PullbackSubdivision out = pullback_subdivision(phi, s);
    REQUIRE(check_proper_subdivision(out.subdivision).ok());
    REQUIRE(validate_complex(out.subdivision.source).ok());
    REQUIRE(validate_cover(out.lifted).ok());
    REQUIRE(balance_report(out.lifted).degree == Int(2));
    // both edges acquire a midpoint
    int mid = 0;
    for (const auto& [id, f] : out.subdivision.source.faces)
      if (f.rank == 1 && f.varpi == IVec{2}) ++mid;
    REQUIRE(mid == 2);
  }
  SUBCASE("subdivision of a stranger") {
    ComplexCover phi = folded_path();
    ComplexMap s = stellar_subdivide(path_graph(2), "e0", {1, 1});
    REQUIRE_THROWS_AS(pullback_subdivision(phi, s), ZplError);
  }
}
