#pragma once

#include <optional>

#include "zpl/matrix.hpp"

namespace zpl {

// left * input * right = diag(invariants) padded with zeros; left, right
// unimodular; invariants positive with invariants[i] | invariants[i+1].
// The zero matrix has an empty invariant list.
struct SNF {
  std::vector<Int> invariants;
  IntMat left;
  IntMat right;
};

SNF smith_normal_form(const IntMat& m);

// Row-style echelon form: hnf = u * input with u unimodular, exactly `rank`
// nonzero rows first, positive pivots, entries above a pivot reduced into
// [0, pivot).
struct HNF {
  IntMat h;
  IntMat u;
  int rank = 0;
};

HNF hermite_normal_form(const IntMat& m);

int int_rank(const IntMat& m);

// Determinant of a square matrix (fraction-free elimination).
Int determinant(const IntMat& m);

// Inverse of a matrix with determinant +-1.
IntMat inverse_unimodular(const IntMat& m);

// Sublattice of Z^ambient in canonical (HNF) basis form. Basis rows are
// independent; rank 0 lattices have an empty basis.
struct Lattice {
  int ambient = 0;
  IntMat basis;  // rank x ambient, HNF rows

  static Lattice full(int n);
  static Lattice zero(int n);
  static Lattice from_generators(int n, const std::vector<IVec>& gens);

  int rank() const { return basis.rows; }
  bool contains(const IVec& v) const;
  // Membership of v in the rational span, with the coordinate vector in the
  // basis when it exists.
  std::optional<QVec> span_coords(const QVec& v) const;
  IVec from_coords(const IVec& c) const;
  QVec from_coords_q(const QVec& c) const;
  bool operator==(const Lattice& o) const { return ambient == o.ambient && basis == o.basis; }
};

// Homomorphism between lattices in basis coordinates: matrix has
// target.rank() rows and source.rank() columns, column j = coordinates of the
// image of the j-th source basis vector.
struct LatticeMap {
  Lattice source;
  Lattice target;
  IntMat matrix;
};

bool map_is_injective(const LatticeMap& f);

// Index [target : image] for an injective map of equal ranks; nullopt
// ("infinite") when the map has a kernel or the image has lower rank than
// the target.
std::optional<Int> lattice_index(const LatticeMap& f);

// Index of the subgroup generated by `gens` inside the lattice spanned by
// `target` rows; convenience wrapper over lattice_index.
std::optional<Int> subgroup_index(const std::vector<IVec>& target, const std::vector<IVec>& gens, int ambient);

// One integral solution of a*x = b, or nullopt.
std::optional<IVec> solve_integer(const IntMat& a, const IVec& b);

// One rational solution of a*x = b, or nullopt.
std::optional<QVec> solve_rational(const IntMat& a, const QVec& b);

// Saturated kernel lattice {x : a*x = 0} of a: Z^cols -> Z^rows.
Lattice kernel_saturation(const IntMat& a);

// Least rho > 0 such that a*x = rho*b has an integral solution. The set of
// admissible rho is rho_min * Z intersected with the positive rationals.
// Throws "b-zero" when b = 0 and "no-rational-solution" when a*x = rho*b is
// rationally unsolvable for every rho != 0.
Rat minimal_scaling_rho(const IntMat& a, const QVec& b);

}  // namespace zpl
