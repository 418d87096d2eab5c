#include "doctest.h"
#include "zpl/fan.hpp"

using namespace zpl;

namespace {

AffineMonoid free_monoid(int n) {
  AffineMonoid m;
  m.ambient = n;
  for (int i = 0; i < n; ++i) {
    IVec e(n, Int(0));
    e[i] = 1;
    m.generators.push_back(e);
  }
  return m;
}

IVec ones(int n) { return IVec(n, Int(1)); }

// One row per kept coordinate.
IntMat pick(int n, std::initializer_list<int> coords) {
  IntMat m(int(coords.size()), n);
  int r = 0;
  for (int c : coords) m.at(r++, c) = 1;
  return m;
}

// Two components meeting in a node.
KatoFan node_fan() {
  KatoFan fan;
  fan.points.push_back({"v0", free_monoid(1), {1}, {}});
  fan.points.push_back({"v1", free_monoid(1), {1}, {}});
  fan.points.push_back({"e", free_monoid(2), ones(2),
                         {{"v0", pick(2, {0})}, {"v1", pick(2, {1})}}});
  return fan;
}

// Three surfaces meeting pairwise in curves and once in a point.
KatoFan triangle_fan() {
  KatoFan fan;
  for (int i = 0; i < 3; ++i)
    fan.points.push_back({"v" + std::to_string(i), free_monoid(1), {1}, {}});
  auto edge = [&](const std::string& label, int a, int b) {
    fan.points.push_back({label, free_monoid(2), ones(2),
                           {{"v" + std::to_string(a), pick(2, {0})},
                            {"v" + std::to_string(b), pick(2, {1})}}});
  };
  edge("e01", 0, 1);
  edge("e02", 0, 2);
  edge("e12", 1, 2);
  fan.points.push_back({"t", free_monoid(3), ones(3),
                         {{"e01", pick(3, {0, 1})},
                          {"e02", pick(3, {0, 2})},
                          {"e12", pick(3, {1, 2})},
                          {"v0", pick(3, {0})},
                          {"v1", pick(3, {1})},
                          {"v2", pick(3, {2})}}});
  return fan;
}

void expect_inconsistent(const KatoFan& fan) {
  try {
    dual_complex_from_fan(fan);
    REQUIRE(false);
  } catch (const ZplError& e) {
    REQUIRE(e.code() == "inconsistent-fan");
  }
}

}  // namespace

TEST_CASE("dual complex of a node") {
  PLComplex c = dual_complex_from_fan(node_fan());
  REQUIRE(c.faces.size() == 3);
  REQUIRE(c.embeddings.size() == 2);
  REQUIRE(c.faces.at("e").rank == 2);
  REQUIRE(c.faces.at("e").varpi == ones(2));
  REQUIRE(c.faces.at("v0").rank == 1);
  REQUIRE(validate_complex(c).ok());
  REQUIRE(complex_dim(c) == 1);
  REQUIRE(!complex_is_conical(c));
}

TEST_CASE("dual complex of a node with a multiplicity two component") {
  KatoFan fan = node_fan();
  fan.points[1].varpi = {2};
  fan.points[2].varpi = {1, 2};
  PLComplex c = dual_complex_from_fan(fan);
  REQUIRE(validate_complex(c).ok());
  REQUIRE(c.faces.at("e").varpi == IVec{1, 2});
}

TEST_CASE("dual complex of a triangle of surfaces") {
  PLComplex c = dual_complex_from_fan(triangle_fan());
  REQUIRE(c.faces.size() == 7);
  REQUIRE(c.embeddings.size() == 12);
  REQUIRE(validate_complex(c).ok());
  REQUIRE(complex_dim(c) == 2);
  REQUIRE(complex_is_simplicial(c));
}

TEST_CASE("points with zero marking produce no face") {
  KatoFan fan = node_fan();
  fan.points.push_back({"far", free_monoid(1), {0}, {}});
  PLComplex c = dual_complex_from_fan(fan);
  REQUIRE(c.faces.size() == 3);
  REQUIRE(!c.faces.count("far"));
  REQUIRE(validate_complex(c).ok());
}

TEST_CASE("fan consistency is separate from complex validity") {
  // a consistent fan that forgets two strata still builds, but the complex
  // fails validation because the cone of "t" has uncovered proper faces
  KatoFan fan;
  fan.points.push_back({"v0", free_monoid(1), {1}, {}});
  fan.points.push_back({"e01", free_monoid(2), ones(2), {{"v0", pick(2, {0})}}});
  fan.points.push_back({"t", free_monoid(3), ones(3),
                         {{"e01", pick(3, {0, 1})}, {"v0", pick(3, {0})}}});
  PLComplex c = dual_complex_from_fan(fan);
  REQUIRE(c.faces.size() == 3);
  REQUIRE(!validate_complex(c).ok());
}

TEST_CASE("inconsistent fans are rejected") {
  SUBCASE("duplicate label") {
    KatoFan fan = node_fan();
    fan.points.push_back({"v0", free_monoid(1), {1}, {}});
    expect_inconsistent(fan);
  }
  SUBCASE("monoid not sharp") {
    KatoFan fan = node_fan();
    fan.points[0].monoid.generators.push_back({-1});
    expect_inconsistent(fan);
  }
  SUBCASE("marking outside the monoid") {
    KatoFan fan = node_fan();
    fan.points[0].varpi = {-1};
    fan.points[2].cospecs.clear();
    expect_inconsistent(fan);
  }
  SUBCASE("monoid does not generate the group") {
    KatoFan fan = node_fan();
    fan.points[0].monoid.generators = {{2}};
    fan.points[0].varpi = {2};
    fan.points[2].cospecs.clear();
    expect_inconsistent(fan);
  }
  SUBCASE("cospecialization to unknown point") {
    KatoFan fan = node_fan();
    fan.points[2].cospecs[0].target = "nope";
    expect_inconsistent(fan);
  }
  SUBCASE("cospecialization to itself") {
    KatoFan fan = node_fan();
    fan.points[2].cospecs[0].target = "e";
    expect_inconsistent(fan);
  }
  SUBCASE("wrong matrix shape") {
    KatoFan fan = node_fan();
    fan.points[2].cospecs[0].matrix = IntMat::identity(2);
    expect_inconsistent(fan);
  }
  SUBCASE("quotient not surjective") {
    KatoFan fan = node_fan();
    fan.points[2].cospecs[0].matrix = IntMat{{2, 0}};
    fan.points[2].varpi = {2, 1};
    fan.points[0].varpi = {4};
    expect_inconsistent(fan);
  }
  SUBCASE("kernel is not a face span") {
    KatoFan fan = node_fan();
    fan.points[2].cospecs[0].matrix = IntMat{{1, -1}};
    fan.points[2].varpi = {2, 1};
    fan.points[0].varpi = {1};
    expect_inconsistent(fan);
  }
  SUBCASE("marking not preserved") {
    KatoFan fan = node_fan();
    fan.points[0].varpi = {3};
    expect_inconsistent(fan);
  }
  SUBCASE("missing composite quotient") {
    KatoFan fan = triangle_fan();
    // drop t -> v0; the composite t -> e01 -> v0 is then undeclared
    auto& cs = fan.points.back().cospecs;
    for (auto it = cs.begin(); it != cs.end(); ++it)
      if (it->target == "v0") {
        cs.erase(it);
        break;
      }
    expect_inconsistent(fan);
  }
}
