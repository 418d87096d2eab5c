#pragma once

// Small hand-checked complexes and covers shared across the test binaries.

#include "zpl/cover.hpp"

namespace zpl_fixtures {

using namespace zpl;

inline ConicalFace make_face(int rank, std::vector<IVec> rays, IVec varpi) {
  ConicalFace f;
  f.rank = rank;
  f.rays = std::move(rays);
  f.varpi = std::move(varpi);
  return f;
}

inline IntMat col(const IVec& v) { return IntMat::from_cols({v}, int(v.size())); }

// Bounded edge with vertex multiplicities m0, m1.
inline PLComplex segment_complex(const Int& m0, const Int& m1) {
  PLComplex c;
  c.faces["e"] = make_face(2, {{1, 0}, {0, 1}}, {m0, m1});
  c.faces["v0"] = make_face(1, {{1}}, {m0});
  c.faces["v1"] = make_face(1, {{1}}, {m1});
  c.embeddings.push_back({"v0", "e", col({1, 0})});
  c.embeddings.push_back({"v1", "e", col({0, 1})});
  return c;
}

// Graph with vertices v0..vn and edges e0..e(n-1), all multiplicities one.
inline PLComplex path_graph(int n) {
  PLComplex c;
  for (int i = 0; i <= n; ++i)
    c.faces["v" + std::to_string(i)] = make_face(1, {{1}}, {1});
  for (int i = 0; i < n; ++i) {
    std::string e = "e" + std::to_string(i);
    c.faces[e] = make_face(2, {{1, 0}, {0, 1}}, {1, 1});
    c.embeddings.push_back({"v" + std::to_string(i), e, col({1, 0})});
    c.embeddings.push_back({"v" + std::to_string(i + 1), e, col({0, 1})});
  }
  return c;
}

// Cycle with n >= 2 vertices; edge ei runs from vi to v(i+1 mod n).
inline PLComplex cycle_graph(int n) {
  PLComplex c;
  for (int i = 0; i < n; ++i)
    c.faces["v" + std::to_string(i)] = make_face(1, {{1}}, {1});
  for (int i = 0; i < n; ++i) {
    std::string e = "e" + std::to_string(i);
    c.faces[e] = make_face(2, {{1, 0}, {0, 1}}, {1, 1});
    c.embeddings.push_back({"v" + std::to_string(i), e, col({1, 0})});
    c.embeddings.push_back({"v" + std::to_string((i + 1) % n), e, col({0, 1})});
  }
  return c;
}

// One vertex with an unbounded edge attached.
inline PLComplex half_line() {
  PLComplex c;
  c.faces["e"] = make_face(2, {{1, 0}, {0, 1}}, {1, 0});
  c.faces["v"] = make_face(1, {{1}}, {1});
  c.embeddings.push_back({"v", "e", col({1, 0})});
  return c;
}

// Segments with conformal volumes 1/4 and 1/2.
inline PLComplex interval_quarter() { return segment_complex(2, 2); }
inline PLComplex interval_half() { return segment_complex(1, 2); }

// Square-based cone: one rank-3 face whose slice is a unit square, with the
// full boundary complex.
inline PLComplex square_cone() {
  PLComplex c;
  std::vector<IVec> pts{{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  c.faces["T"] = make_face(3, pts, {1, 1, 0});
  for (int i = 0; i < 4; ++i)
    c.faces["p" + std::to_string(i)] = make_face(1, {{1}}, {1});
  auto edge = [&](const std::string& id, int a, int b) {
    c.faces[id] = make_face(2, {{1, 0}, {0, 1}}, {1, 1});
    c.embeddings.push_back({"p" + std::to_string(a), id, col({1, 0})});
    c.embeddings.push_back({"p" + std::to_string(b), id, col({0, 1})});
    c.embeddings.push_back({id, "T", IntMat::from_cols({pts[a], pts[b]}, 3)});
  };
  edge("E01", 0, 1);
  edge("E02", 0, 2);
  edge("E13", 1, 3);
  edge("E23", 2, 3);
  for (int i = 0; i < 4; ++i)
    c.embeddings.push_back({"p" + std::to_string(i), "T", col(pts[i])});
  return c;
}

inline PLFunction graph_function(const PLComplex& c, const std::map<std::string, Rat>& values) {
  // values are indexed by vertex id; edge covectors interpolate
  PLFunction f;
  for (const auto& [id, face] : c.faces) {
    if (face.rank == 1) {
      f.covectors[id] = {values.at(id) * Rat(face.varpi[0])};
      continue;
    }
    QVec cov(face.rank, Rat(0));
    f.covectors[id] = cov;  // filled below via embeddings
  }
  for (const Embedding& e : c.embeddings) {
    const ConicalFace& sub = c.faces.at(e.sub);
    if (sub.rank != 1) continue;
    // the vertex ray lands on one ray of the edge cone; the covector entry
    // on that ray is value * multiplicity
    IVec img = e.matrix.apply(sub.rays[0]);
    const ConicalFace& super = c.faces.at(e.super);
    for (size_t k = 0; k < super.rays.size(); ++k)
      if (super.rays[k] == img) {
        // super.rays[k] is a standard basis vector in these graph fixtures
        for (int j = 0; j < super.rank; ++j)
          if (super.rays[k][j] != 0)
            f.covectors[e.super][j] = values.at(e.sub) * Rat(dot(super.varpi, super.rays[k]));
      }
  }
  return f;
}

// Path w0-w1-w2 folded onto a single edge v0-v1; only the middle vertex and
// its image are vertical.
inline ComplexCover folded_path() {
  ComplexCover phi;
  phi.source = path_graph(2);
  PLComplex t;
  t.faces["g"] = make_face(2, {{1, 0}, {0, 1}}, {1, 1});
  t.faces["u0"] = make_face(1, {{1}}, {1});
  t.faces["u1"] = make_face(1, {{1}}, {1});
  t.embeddings.push_back({"u0", "g", col({1, 0})});
  t.embeddings.push_back({"u1", "g", col({0, 1})});
  phi.target = t;

  for (auto& [id, f] : phi.source.faces) f.vertical = false;
  for (auto& [id, f] : phi.target.faces) f.vertical = false;
  phi.source.faces.at("v1").vertical = true;
  phi.source.faces.at("v1").genus = Int(0);
  phi.target.faces.at("u1").vertical = true;
  phi.target.faces.at("u1").genus = Int(0);

  phi.face_map = {{"v0", "u0"}, {"v1", "u1"}, {"v2", "u0"},
                  {"e0", "g"}, {"e1", "g"}};
  phi.lattice_maps["v0"] = IntMat::identity(1);
  phi.lattice_maps["v1"] = IntMat::identity(1);
  phi.lattice_maps["v2"] = IntMat::identity(1);
  phi.lattice_maps["e0"] = IntMat::identity(2);
  phi.lattice_maps["e1"] = IntMat{{0, 1}, {1, 0}};
  return phi;
}

// Degree two unramified cover of the two-vertex cycle by the four-cycle.
inline ComplexCover cycle_double_cover() {
  ComplexCover phi;
  phi.source = cycle_graph(4);
  phi.target = cycle_graph(2);
  phi.face_map = {{"v0", "v0"}, {"v1", "v1"}, {"v2", "v0"}, {"v3", "v1"},
                  {"e0", "e0"}, {"e1", "e1"}, {"e2", "e0"}, {"e3", "e1"}};
  for (const auto& [id, f] : phi.source.faces)
    phi.lattice_maps[id] = IntMat::identity(f.rank);
  return phi;
}

// Valid cover that fails balancing: the two edges over the middle vertex
// carry different lattice indices.
inline ComplexCover mixed_index_cover() {
  ComplexCover phi;
  phi.target = path_graph(2);
  PLComplex s = path_graph(2);
  s.faces.at("e1").varpi = {1, 2};
  s.faces.at("v2").varpi = {2};
  phi.source = s;
  phi.face_map = {{"v0", "v0"}, {"v1", "v1"}, {"v2", "v2"},
                  {"e0", "e0"}, {"e1", "e1"}};
  phi.lattice_maps["v0"] = IntMat::identity(1);
  phi.lattice_maps["v1"] = IntMat::identity(1);
  phi.lattice_maps["v2"] = IntMat{{2}};
  phi.lattice_maps["e0"] = IntMat::identity(2);
  phi.lattice_maps["e1"] = IntMat{{1, 0}, {0, 2}};
  return phi;
}

}  // namespace zpl_fixtures
