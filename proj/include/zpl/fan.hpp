#pragma once
// Kato fans: finite posets of sharp monoids with marked elements, and the
// dual-complex construction that turns them into sliced PL complexes.

#include "zpl/complex.hpp"
#include "zpl/monoid.hpp"

#include <string>
#include <vector>

namespace zpl {

// Quotient of monoid groups along a face localization.  The matrix maps the
// source point's group Z^{n_from} onto the target's Z^{n_to}.
struct Cospecialization {
  std::string target;
  IntMat matrix;
};

struct MarkedFanPoint {
  std::string label;
  AffineMonoid monoid;  // sharp, generating Z^{ambient}
  IVec varpi;           // marked element, member of the monoid
  std::vector<Cospecialization> cospecs;
};

struct KatoFan {
  std::vector<MarkedFanPoint> points;
};

// Builds the dual complex: one face per point with nonzero varpi, whose cone
// is the dual of the point's monoid cone and whose covector is varpi itself;
// each cospecialization contributes the transposed quotient as an embedding.
// Throws "inconsistent-fan" when the cospecialization data is not a family of
// commuting surjective face quotients preserving varpi.
PLComplex dual_complex_from_fan(const KatoFan& fan);

}  // namespace zpl
