#pragma once

#include "zpl/linalg.hpp"

namespace zpl {

// Exact V/H description of a rational polyhedral cone. `span` is the
// saturated lattice of the linear span; `rays_local` and `facets_local` live
// in span-basis coordinates, where the cone is full-dimensional. Facet
// normals are primitive inner normals; for a 1-dimensional cone the single
// normal is the positive pairing direction.
struct ConeGeom {
  int ambient = 0;
  std::vector<IVec> rays;  // primitive, deduplicated, input order
  Lattice span;
  std::vector<IVec> rays_local;
  std::vector<IVec> facets_local;

  int dim() const { return span.rank(); }
};

ConeGeom cone_geometry(const std::vector<IVec>& rays, int ambient);

bool cone_contains(const ConeGeom& c, const QVec& x);

inline bool cone_contains(const ConeGeom& c, const IVec& x) { return cone_contains(c, to_q(x)); }

// No nonzero v with both v and -v in the cone.
bool cone_strictly_convex(const ConeGeom& c);

// All faces as sorted ray-index sets, from the zero face (empty set, when the
// cone is strictly convex) up to the cone itself. Indices refer to c.rays.
std::vector<std::vector<int>> cone_faces(const ConeGeom& c);

// Extremal generators of the full-dimensional pointed cone
// {x in R^d : <f, x> >= 0 for all f in facets}; primitive, deduplicated.
std::vector<IVec> rays_from_facets(const std::vector<IVec>& facets, int d);

// Primitive extremal rays, lexicographically sorted: the canonical key for
// cone equality. Requires a strictly convex cone.
std::vector<IVec> canonical_rays(const std::vector<IVec>& rays, int ambient);

inline std::vector<IVec> canonical_rays(const ConeGeom& c) { return canonical_rays(c.rays, c.ambient); }

// Extremal rays of {w : <w, r> >= 0 for all r}, in the ambient dual lattice.
// Requires the rays to span Z^n rationally and generate a strictly convex
// cone, so that the dual is again full-dimensional and strictly convex.
std::vector<IVec> dual_cone_rays(const std::vector<IVec>& rays, int ambient);

// A covector (in local span coordinates) strictly positive on every nonzero
// point of a strictly convex cone: the sum of its facet normals.
IVec positive_grading(const ConeGeom& c);

}  // namespace zpl
