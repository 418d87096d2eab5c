#pragma once
// Conformal measure on rational polytopes: minimal-scaling normalization,
// exact triangulation volumes, and the determinant formula for faces.

#include "zpl/complex.hpp"

#include <vector>

namespace zpl {

struct VolumeCertificate {
  Rat rho = 1;
  Rat normalized_volume = 0;
  Rat conformal_volume = 0;
  int dim = 0;
  // index tuples into the input point list, one per top-dimensional simplex
  std::vector<std::vector<int>> triangulation;
};

// Exact volume data of the convex hull of `points` in Z^ambient ⊗ Q,
// normalized so a unimodular simplex of the span lattice has volume 1.
// When 0 is not in the affine span the polytope is scaled by the minimal ρ
// putting its plane through lattice points and the result divided by
// ρ^(dim+1). Throws "empty".
VolumeCertificate conformal_volume(const std::vector<QVec>& points, int ambient);

// Slice polytope of a face; throws "unbounded" when recession rays exist and
// "empty" when the slice has no vertices.
VolumeCertificate conformal_volume(const ConicalFace& f);

// det(σ) / (m_1 ⋯ m_b) over the vertex rays; equals the conformal volume of
// the truncation. Throws "non-simplicial", "no-vertices".
Rat simplicial_face_volume(const ConicalFace& f);

// vol(f(σ)) / vol(σ) for an integer linear map injective on the span of σ;
// verified against the index of the induced map of span lattices.
// Throws "dimension-drop".
Rat conformal_ratio(const std::vector<QVec>& points, const IntMat& f, int ambient);

// Placing triangulation used by the volume routines, exposed for the
// independence tests; apex selection is lexicographic (max instead of min
// when flipped).
std::vector<std::vector<int>> triangulate_points(const std::vector<QVec>& points, bool flipped = false);

}  // namespace zpl
