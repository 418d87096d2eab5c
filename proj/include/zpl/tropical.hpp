#pragma once

#include "zpl/cover.hpp"

namespace zpl {

// Structure constants alpha_{r,tau} keyed by (ridge id, ray index in that
// face); entries not present are zero.
using AlphaKey = std::pair<std::string, int>;
using AlphaMap = std::map<AlphaKey, Rat>;

struct TropicalComplex {
  PLComplex base;  // simplicial and pure
  AlphaMap alpha;
};

Rat alpha_at(const TropicalComplex& t, const std::string& ridge, int ray);

// det C(tau) / det C(sigma) for adjacent (sigma, tau), cross-checked against
// the lattice index [N_sigma : im(tau) + Z n_r]. Throws "not-adjacent".
Rat intersection_number(const TropicalComplex& t, const std::string& ridge, const std::string& facet);

struct TropicalReport {
  Report report;
  std::map<std::string, Rat> mult_b, mult_u;
  // ridges where mult_u = 0 while some recession ray carries a nonzero alpha;
  // recession-case slopes are undefined there
  std::vector<std::string> degenerate_ridges;
  bool ok() const { return report.ok(); }
};

// Checks the base, simpliciality, alpha key sanity, and the per-ridge
// constraint sum_{vertex rays v} m_v alpha_{v,tau} == mult_b(tau).
TropicalReport validate_tropical(const TropicalComplex& t);

struct SlopeValue {
  std::string facet, ridge;
  Rat value;
  bool vertex_case = true;  // the extra ray of the facet is a vertex ray
};

// Outgoing slope of f along the unique facet-ridge instance; throws
// "not-adjacent", "ambiguous-instance", "degenerate-mult-u".
SlopeValue slope(const TropicalComplex& t, const PLFunction& f, const std::string& facet,
                 const std::string& ridge);

// Sum of slopes over all adjacent facet instances, per vertical ridge.
CombinatorialDivisor laplacian(const TropicalComplex& t, const PLFunction& f);

// Independent computation of the same divisor through intersection numbers:
// coefficient at tau is (sum_link f(n_r) det tau/det sigma
//   - sum_{rays r of C(tau)} f(n_r) alpha_{r,tau}) / vol(tau^-).
CombinatorialDivisor specialize(const TropicalComplex& t, const PLFunction& f);

// Coefficient f(n_r) per ray class of the complex.
std::map<std::string, Rat> weil_cycle(const TropicalComplex& t, const PLFunction& f);

enum class Convexity { harmonic, convex, strongly_convex, none };

std::string convexity_name(Convexity c);

// Sign pattern of the specialization numerators across vertical ridges.
Convexity classify_function(const TropicalComplex& t, const PLFunction& f);

struct LaplacianSplit {
  CombinatorialDivisor bounded, unbounded;  // by the facet of each instance
};

LaplacianSplit laplacian_split(const TropicalComplex& t, const PLFunction& f);

// K[tau] = (2 g(tau) + val(tau) - 2) / vol(tau^-) over vertical ridges;
// val counts facet instances. Throws "missing-genus".
CombinatorialDivisor canonical_divisor(const TropicalComplex& t);

// K'[tau'] = -(chi'(tau') - [E_{tau'}:E_tau] chi(tau)) / vol(tau'^-) over
// vertical source ridges, [E_{tau'}:E_tau] = deg_{tau'} / [M_{tau'}:M_tau].
// Throws "unbalanced", "missing-genus".
CombinatorialDivisor relative_canonical(const ComplexCover& phi);

// Transport of structure constants along a balanced cover:
// alpha'_{r',tau'} = [E_{tau'}:E_tau] alpha_{r,tau} with r the target ray
// the image of r' lies on.
AlphaMap pullback_alpha(const ComplexCover& phi, const TropicalComplex& target);
TropicalComplex pullback_tropical(const ComplexCover& phi, const TropicalComplex& target);

struct RHReport {
  bool ok = true;
  CombinatorialDivisor different_laplacian;
  CombinatorialDivisor relative_canonical_divisor;
  CombinatorialDivisor residuals;            // nonzero entries of the difference
  std::vector<std::string> negative_faces;   // faces where delta takes a negative value
};

// Verifies Laplacian(delta) == relative canonical divisor for a nonnegative
// PL function delta on the cover source.
RHReport rh_check(const TropicalComplex& source, const ComplexCover& phi, const PLFunction& delta);

// Transport of specialization-type divisors (volume-normalized densities on
// ridge strata): weight at tau' is [E_{tau'}:E_tau] vol(tau^-)/vol(tau'^-).
// Over the same base this equals the local degree, so it agrees with
// pullback_cycle there; under a base change such as a dilation the two
// differ and this is the weight for which specialization, the Laplacian,
// and the adjunction formula commute with pullback. Throws "unbalanced".
CombinatorialDivisor pullback_density(const ComplexCover& phi, const CombinatorialDivisor& w);

// Divisor arithmetic treating absent coefficients as zero.
CombinatorialDivisor divisor_sub(const CombinatorialDivisor& a, const CombinatorialDivisor& b);
bool divisor_eq(const CombinatorialDivisor& a, const CombinatorialDivisor& b);

}  // namespace zpl
