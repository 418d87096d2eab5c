#pragma once
// Finite covers of PL complexes: validation, local degrees and balancing,
// pullbacks of cycles, functions, and subdivisions, the dilation cover, and
// the multiplicity chain check.

#include "zpl/subdivide.hpp"

#include <optional>

namespace zpl {

// Same shape as a subdivision map, but the per-face lattice maps are
// injective with finite index and carry each source cone onto the whole
// target cone.
using ComplexCover = ComplexMap;

// Face totality, rank preservation, injectivity, cone surjectivity, varpi
// compatibility (pullback equals a uniform positive multiple of the source
// covector), commuting squares, surjectivity on faces.
Report validate_cover(const ComplexCover& phi);

// Common value of Σ [M_{σ'}:M_σ] over the source facets sending the chosen
// ridge instance pair onto each target instance over φ(ridge); throws
// "unbalanced-at-ridge" with the differing per-instance sums.
Int local_degree(const ComplexCover& phi, const std::string& source_ridge);

struct BalanceReport {
  bool balanced = true;
  std::map<std::string, Int> local_degrees;      // per source ridge
  std::vector<std::string> unbalanced_ridges;
  std::map<std::string, std::string> failures;   // ridge -> detail
  std::optional<Int> degree;                     // target connected and consistent
  bool degree_consistent = true;
};
BalanceReport balance_report(const ComplexCover& phi);

// φ*[τ] = Σ_{τ' over τ} deg_{τ'}·[τ'], extended linearly; throws "unbalanced".
CombinatorialDivisor pullback_cycle(const ComplexCover& phi, const CombinatorialDivisor& w);

// per-face dual pullback of the covectors; pointwise equals f ∘ φ
PLFunction pullback_function(const ComplexCover& phi, const PLFunction& f);

// Base-change cover of index e: per face the sublattice where varpi takes
// values in eZ, with varpi divided by e.  Throws "no-varpi" on complexes
// whose covector vanishes identically.
ComplexCover dilation_cover(const PLComplex& c, const Int& e);

// Multiplicity bookkeeping across one-step specializations: for every source
// face and every target coface instance of its image, the index-weighted
// residue degrees upstairs must sum to the downstairs product.
Report multiplicity_chain_check(const ComplexCover& phi);

struct PullbackSubdivision {
  ComplexMap subdivision;  // of phi's source
  ComplexCover lifted;     // subdivided source -> subdivided target
};
// Pulls a proper subdivision of the target back through the cover.
PullbackSubdivision pullback_subdivision(const ComplexCover& phi, const ComplexMap& s);

}  // namespace zpl
