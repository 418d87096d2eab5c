#pragma once

// Fixtures and helpers specific to the tropical test binaries: small
// two-dimensional complexes with and without recession rays, random graph
// builders, and the even-split solver for the structure constants.

#include "fixtures.hpp"
#include "zpl/tropical.hpp"

namespace zpl_fixtures {

// Cone over a triangle: three vertices p0,p1,p2, three unit edges, one
// rank-3 top face spanned by the standard basis.
inline PLComplex triangle_complex() {
  PLComplex c;
  std::vector<IVec> basis{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  c.faces["T"] = make_face(3, basis, {1, 1, 1});
  for (int i = 0; i < 3; ++i)
    c.faces["p" + std::to_string(i)] = make_face(1, {{1}}, {1});
  auto edge = [&](const std::string& id, int a, int b) {
    c.faces[id] = make_face(2, {{1, 0}, {0, 1}}, {1, 1});
    c.embeddings.push_back({"p" + std::to_string(a), id, col({1, 0})});
    c.embeddings.push_back({"p" + std::to_string(b), id, col({0, 1})});
    c.embeddings.push_back({id, "T", IntMat::from_cols({basis[a], basis[b]}, 3)});
  };
  edge("E01", 0, 1);
  edge("E02", 0, 2);
  edge("E12", 1, 2);
  for (int i = 0; i < 3; ++i)
    c.embeddings.push_back({"p" + std::to_string(i), "T", col(basis[i])});
  return c;
}

// Half-strip: a rank-3 facet over a bounded edge with one recession
// direction. The edge E_ab has mult_u = 1; the two half-line edges E_ac and
// E_bc have mult_u = 0.
inline PLComplex prism_wedge() {
  PLComplex c;
  IVec a{1, 0, 0}, b{1, 1, 0}, r{0, 0, 1};
  c.faces["S"] = make_face(3, {a, b, r}, {1, 0, 0});
  c.faces["E_ab"] = make_face(2, {{1, 0}, {0, 1}}, {1, 1});
  c.faces["E_ac"] = make_face(2, {{1, 0}, {0, 1}}, {1, 0});
  c.faces["E_bc"] = make_face(2, {{1, 0}, {0, 1}}, {1, 0});
  c.faces["v_a"] = make_face(1, {{1}}, {1});
  c.faces["v_b"] = make_face(1, {{1}}, {1});
  c.embeddings.push_back({"v_a", "E_ab", col({1, 0})});
  c.embeddings.push_back({"v_b", "E_ab", col({0, 1})});
  c.embeddings.push_back({"v_a", "E_ac", col({1, 0})});
  c.embeddings.push_back({"v_b", "E_bc", col({1, 0})});
  c.embeddings.push_back({"E_ab", "S", IntMat::from_cols({a, b}, 3)});
  c.embeddings.push_back({"E_ac", "S", IntMat::from_cols({a, r}, 3)});
  c.embeddings.push_back({"E_bc", "S", IntMat::from_cols({b, r}, 3)});
  c.embeddings.push_back({"v_a", "S", col(a)});
  c.embeddings.push_back({"v_b", "S", col(b)});
  return c;
}

// Quarter plane: one vertex, two half-line edges, one rank-3 facet with two
// recession directions. Both edges have mult_b = 0 and mult_u = 1, so their
// recession rays may carry nonzero structure constants.
inline PLComplex quarter_plane() {
  PLComplex c;
  IVec a{1, 0, 0}, r1{0, 1, 0}, r2{0, 0, 1};
  c.faces["S"] = make_face(3, {a, r1, r2}, {1, 0, 0});
  c.faces["E1"] = make_face(2, {{1, 0}, {0, 1}}, {1, 0});
  c.faces["E2"] = make_face(2, {{1, 0}, {0, 1}}, {1, 0});
  c.faces["v_a"] = make_face(1, {{1}}, {1});
  c.embeddings.push_back({"v_a", "E1", col({1, 0})});
  c.embeddings.push_back({"v_a", "E2", col({1, 0})});
  c.embeddings.push_back({"E1", "S", IntMat::from_cols({a, r1}, 3)});
  c.embeddings.push_back({"E2", "S", IntMat::from_cols({a, r2}, 3)});
  c.embeddings.push_back({"v_a", "S", col(a)});
  return c;
}

// Path with prescribed vertex multiplicities m0..mn.
inline PLComplex weighted_path(const std::vector<Int>& mults) {
  PLComplex c;
  for (size_t i = 0; i < mults.size(); ++i)
    c.faces["v" + std::to_string(i)] = make_face(1, {{1}}, {mults[i]});
  for (size_t i = 0; i + 1 < mults.size(); ++i) {
    std::string e = "e" + std::to_string(i);
    c.faces[e] = make_face(2, {{1, 0}, {0, 1}}, {mults[i], mults[i + 1]});
    c.embeddings.push_back({"v" + std::to_string(i), e, col({1, 0})});
    c.embeddings.push_back({"v" + std::to_string(i + 1), e, col({0, 1})});
  }
  return c;
}

// Cycle with prescribed vertex multiplicities m0..m(n-1), n >= 3.
inline PLComplex weighted_cycle(const std::vector<Int>& mults) {
  PLComplex c;
  size_t n = mults.size();
  for (size_t i = 0; i < n; ++i)
    c.faces["v" + std::to_string(i)] = make_face(1, {{1}}, {mults[i]});
  for (size_t i = 0; i < n; ++i) {
    size_t j = (i + 1) % n;
    std::string e = "e" + std::to_string(i);
    c.faces[e] = make_face(2, {{1, 0}, {0, 1}}, {mults[i], mults[j]});
    c.embeddings.push_back({"v" + std::to_string(i), e, col({1, 0})});
    c.embeddings.push_back({"v" + std::to_string(j), e, col({0, 1})});
  }
  return c;
}

// Unit-multiplicity graph with explicit edge list; parallel edges allowed.
inline PLComplex make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  PLComplex c;
  for (int i = 0; i < n; ++i)
    c.faces["v" + std::to_string(i)] = make_face(1, {{1}}, {1});
  for (size_t k = 0; k < edges.size(); ++k) {
    std::string e = "e" + std::to_string(k);
    c.faces[e] = make_face(2, {{1, 0}, {0, 1}}, {1, 1});
    c.embeddings.push_back({"v" + std::to_string(edges[k].first), e, col({1, 0})});
    c.embeddings.push_back({"v" + std::to_string(edges[k].second), e, col({0, 1})});
  }
  return c;
}

// Even-split solution of the per-ridge constraint: each vertex ray of a
// ridge gets mult_b / (k m_i), recession rays get nothing.
inline AlphaMap solve_alpha(const PLComplex& base) {
  TropicalComplex bare{base, {}};
  TropicalReport r = validate_tropical(bare);
  AlphaMap a;
  for (const auto& [rid, mb] : r.mult_b) {
    if (mb == 0) continue;
    FaceReport fr = analyze_face(base.faces.at(rid));
    Rat share = mb / Rat(Int((long)fr.vertex_rays.size()));
    for (int i : fr.vertex_rays) a[{rid, i}] = share / Rat(fr.mults[i]);
  }
  return a;
}

// Function defined by one covector on a facet every face embeds into,
// pushed down through the embedding matrices.
inline PLFunction top_function(const PLComplex& c, const std::string& top, const QVec& cov) {
  PLFunction f;
  f.covectors[top] = cov;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const Embedding& e : c.embeddings) {
      if (!f.covectors.count(e.super) || f.covectors.count(e.sub)) continue;
      const QVec& fs = f.covectors.at(e.super);
      QVec g(c.faces.at(e.sub).rank, Rat(0));
      for (int j = 0; j < e.matrix.cols; ++j)
        for (int k = 0; k < e.matrix.rows; ++k) g[j] += fs[k] * Rat(e.matrix.at(k, j));
      f.covectors[e.sub] = g;
      progress = true;
    }
  }
  return f;
}

// The distinguished function whose covector on every face is the covector of
// that face itself.
inline PLFunction varpi_function(const PLComplex& c) {
  PLFunction f;
  for (const auto& [id, face] : c.faces) f.covectors[id] = to_q(face.varpi);
  return f;
}

}  // namespace zpl_fixtures
