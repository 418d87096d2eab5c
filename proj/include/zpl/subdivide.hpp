#pragma once
// Subdivisions of PL complexes: the generic assembler that turns compatible
// per-face cone fans into a global subdivision map, stellar subdivision, the
// minimal regular resolution of rank-2 cones, and the subdivision checker.

#include "zpl/complex.hpp"
#include "zpl/measure.hpp"

#include <map>
#include <string>
#include <vector>

namespace zpl {

// Morphism of complexes: per-face integer maps commuting with embeddings.
// Subdivisions point from the refined complex to the original; covers reuse
// the same shape with finite-index lattice maps.
struct ComplexMap {
  PLComplex source;
  PLComplex target;
  std::map<std::string, std::string> face_map;
  std::map<std::string, IntMat> lattice_maps;  // source-face coords -> target-face coords
};

// Per-face fan: full-dimensional subcones in that face's local coordinates.
// Faces omitted from the map keep their single full cone.
struct LocalFan {
  std::vector<std::vector<IVec>> top_cones;
};

// Glues compatible per-face fans into a subdivision of c.  The fans must be
// closed under the original embeddings (the image of every subcone of a face
// appears in each coface's fan); stellar and pullback constructions guarantee
// this.  New faces reuse the original id when a cone survives unsubdivided.
ComplexMap assemble_subdivision(const PLComplex& c, const std::map<std::string, LocalFan>& fans);

// Stellar subdivision at a primitive point interior to the chosen face's
// cone; every coface is subdivided through the image point.  Throws
// "not-primitive", "not-interior", and "multi-adjacent-star" when a coface
// meets the face through more than one embedding instance.
ComplexMap stellar_subdivide(const PLComplex& c, const std::string& face, const IVec& p);

// Minimal regular subdivision of a strictly convex rank-2 cone: rays in
// rotation order (endpoints included) plus the strictly interior inserted
// rays; consecutive pairs are unimodular.  Throws "not-rank-2".
struct HJResolution {
  std::vector<IVec> rays;      // angular order from the first extremal ray
  std::vector<IVec> inserted;  // rays strictly inside the cone
};
HJResolution hj_resolve_2d(const ConicalFace& f);

// Verifies that m is a proper subdivision: per-face immersions, commuting
// squares, varpi compatibility, interior-disjoint pieces meeting face-to-face
// and covering every target cone.
Report check_proper_subdivision(const ComplexMap& m);

}  // namespace zpl
