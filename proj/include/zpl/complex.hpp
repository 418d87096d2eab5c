#pragma once

#include <map>
#include <set>
#include <string>

#include "zpl/cones.hpp"

namespace zpl {

// One polyhedron sigma = C ∩ {<varpi,.> = 1}, stored as the strictly convex
// full-dimensional cone C in Z^rank together with the covector. varpi = 0
// encodes a face of a cone complex (no slice). The trailing fields are
// decorations consumed by the cover/tropical layers.
struct ConicalFace {
  int rank = 0;
  std::vector<IVec> rays;
  IVec varpi;
  bool vertical = true;
  std::optional<Int> genus;
  Int residue_degree = 1;
};

// Face embedding N_sub -> N_super carrying C(sub) onto a face of C(super)
// and pulling varpi_super back to varpi_sub. matrix: rank_super x rank_sub.
struct Embedding {
  std::string sub, super;
  IntMat matrix;
};

struct PLComplex {
  std::map<std::string, ConicalFace> faces;
  std::vector<Embedding> embeddings;
};

struct Violation {
  std::string code;
  std::string detail;
};

struct Report {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

const ConicalFace& face_of(const PLComplex& c, const std::string& id);  // "unknown-face"

// Structural validation: ray primitivity, strict convexity, full
// dimensionality, varpi nonnegativity, embedding immersion/face-image/varpi
// conditions, composition closure, the one-embedding-per-face axiom, and
// sliced/conical type consistency. Every failure is reported.
Report validate_complex(const PLComplex& c);

// True when every face has varpi = 0 (a cone complex); complexes must be
// uniformly sliced or uniformly conical to validate.
bool complex_is_conical(const PLComplex& c);

// Dimension of the geometric realization: max rank - 1 for sliced
// complexes, max rank for conical ones.
int complex_dim(const PLComplex& c);

// Every maximal face (one with no outgoing embedding) has maximal rank.
bool complex_is_pure(const PLComplex& c);

bool complex_is_simplicial(const PLComplex& c);

std::vector<std::vector<std::string>> connected_components(const PLComplex& c);

struct FaceReport {
  int rank = 0;
  int ray_count = 0;
  bool simplicial = false;
  std::optional<Int> det;      // |det of ray matrix|, simplicial only
  Int root_index = 0;          // gcd of varpi coordinates; 0 when varpi = 0
  std::vector<int> vertex_rays;
  std::vector<int> recession_rays;
  std::vector<Int> mults;      // <varpi, ray> per ray
};

FaceReport analyze_face(const ConicalFace& f);

// Vertex list of sigma^- = sigma ∩ {<gamma_r,.> <= 1 over recession rays r},
// gamma_r the dual-basis covectors. Exact rational points in N_sigma ⊗ Q.
// Throws "non-simplicial", "no-vertices".
std::vector<QVec> sigma_minus(const ConicalFace& f);

struct FacetRidgePair {
  std::string facet, ridge;
  int embedding = -1;             // index into PLComplex::embeddings
  std::vector<int> link_rays;     // facet rays outside the ridge image
  std::optional<int> extra_ray;   // the unique link ray (simplicial facets)
  bool extra_is_vertex = false;
};

// All (facet, ridge) adjacencies of a pure complex, one entry per embedding
// instance (loops yield two entries). Throws "not-pure".
std::vector<FacetRidgePair> facet_ridge_pairs(const PLComplex& c);

// m: primitive covector in M_facet vanishing on the ridge image, >= 0 on
// C(facet); n: lattice vector of N_facet completing the ridge image to a
// basis, normalized so <m, n> = 1.
struct NormalData {
  IVec m_cov;
  IVec n_class;
};

NormalData primitive_normal_vector(const PLComplex& c, const FacetRidgePair& p);  // "not-facet-ridge"

struct StarEntry {
  std::string sigma;
  int embedding = -1;           // -1 marks the identity instance at tau itself
  std::vector<int> link_rays;   // rays of sigma outside the image of tau
};

struct StarLink {
  std::vector<std::string> star;
  std::vector<StarEntry> entries;
};

StarLink star_link(const PLComplex& c, const std::string& tau);  // "unknown-face"

// Conical complex of recession cones, with faces identified along embeddings
// that restrict to isomorphisms of recession data.
PLComplex recession_complex(const PLComplex& c);

// A rational covector per face, compatible with embeddings.
struct PLFunction {
  std::map<std::string, QVec> covectors;
};

Report validate_function(const PLComplex& c, const PLFunction& f);

struct CombinatorialDivisor {
  std::map<std::string, Rat> coefficients;  // ridge id -> coefficient
};

// Equivalence classes of cone rays across embedding instances. A class
// containing a rank-1 face's ray is labeled by that face id; other classes
// (recession directions) are labeled "<face>#<ray index>" of their
// lexicographically least member.
struct RayClasses {
  std::map<std::pair<std::string, int>, int> cls;
  std::vector<std::string> labels;
};

RayClasses ray_classes(const PLComplex& c);

}  // namespace zpl
