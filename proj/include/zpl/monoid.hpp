#pragma once

#include "zpl/cones.hpp"

namespace zpl {

// Finitely generated submonoid of Z^ambient, presented by generators.
struct AffineMonoid {
  int ambient = 0;
  std::vector<IVec> generators;
};

// Sharp = no nonzero units; equivalent to strict convexity of the generated
// cone.
bool monoid_is_sharp(const AffineMonoid& m);

// Membership of v in the generated monoid (not its saturation), decided by
// graded descent. Requires a sharp monoid ("not-strictly-convex" otherwise).
bool monoid_contains(const AffineMonoid& m, const IVec& v);

// Unique minimal generating set of (cone ∩ Z^ambient). Candidates are the
// lattice points of {x in cone : grading(x) <= total generator grading},
// which contains the half-open zonotope of the rays; irreducibles survive.
// Output sorted lexicographically. Throws "not-strictly-convex".
std::vector<IVec> hilbert_basis(const std::vector<IVec>& cone_rays, int ambient);

// Hom(M, N), presented by the Hilbert basis of the dual cone inside the dual
// of the span lattice M^gp. For a full-rank monoid the span basis is the
// standard one and the result lives in the ambient dual coordinates. Throws
// "not-sharp".
AffineMonoid dual_monoid(const AffineMonoid& m);

// Saturation cone(M) ∩ ambient lattice, presented by its Hilbert basis.
AffineMonoid saturation(const AffineMonoid& m);

// Faces of the monoid (complements of prime ideals). height = dimension of
// the face's cone; relation lists all containments (i, j) with face i a
// subface of face j.
struct MonoidFace {
  AffineMonoid monoid;
  std::vector<int> ray_set;  // indices into the deduplicated primitive rays
  int height = 0;
};

struct FacePoset {
  std::vector<MonoidFace> faces;
  std::vector<std::pair<int, int>> relation;
};

FacePoset face_poset(const AffineMonoid& m);

}  // namespace zpl
