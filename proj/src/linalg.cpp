#include "zpl/linalg.hpp"

#include <algorithm>

namespace zpl {

namespace {

// Floor division for b > 0.
Int fdiv(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

void swap_rows(IntMat& m, int i, int j) {
  if (i == j) return;
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

void swap_cols(IntMat& m, int i, int j) {
  if (i == j) return;
  for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}

// row[dst] -= q * row[src]
void row_axpy(IntMat& m, int dst, int src, const Int& q) {
  if (q == 0) return;
  for (int c = 0; c < m.cols; ++c) m.at(dst, c) -= q * m.at(src, c);
}

void col_axpy(IntMat& m, int dst, int src, const Int& q) {
  if (q == 0) return;
  for (int r = 0; r < m.rows; ++r) m.at(r, dst) -= q * m.at(r, src);
}

void negate_row(IntMat& m, int i) {
  for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}

}  // namespace

SNF smith_normal_form(const IntMat& m) {
  IntMat w = m;
  IntMat left = IntMat::identity(m.rows);
  IntMat right = IntMat::identity(m.cols);
  int n = std::min(m.rows, m.cols);
  int t = 0;
  while (t < n) {
    int pi = -1, pj = -1;
    for (int i = t; i < w.rows; ++i)
      for (int j = t; j < w.cols; ++j)
        if (w.at(i, j) != 0 && (pi < 0 || abs(w.at(i, j)) < abs(w.at(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(w, t, pi);
    swap_rows(left, t, pi);
    swap_cols(w, t, pj);
    swap_cols(right, t, pj);

    bool settled = false;
    while (!settled) {
      settled = true;
      for (int i = t + 1; i < w.rows; ++i) {
        if (w.at(i, t) == 0) continue;
        Int q = w.at(i, t) / w.at(t, t);
        row_axpy(w, i, t, q);
        row_axpy(left, i, t, q);
        if (w.at(i, t) != 0) {
          // remainder strictly smaller than the pivot: promote it
          swap_rows(w, t, i);
          swap_rows(left, t, i);
          settled = false;
          break;
        }
      }
      if (!settled) continue;
      for (int j = t + 1; j < w.cols; ++j) {
        if (w.at(t, j) == 0) continue;
        Int q = w.at(t, j) / w.at(t, t);
        col_axpy(w, j, t, q);
        col_axpy(right, j, t, q);
        if (w.at(t, j) != 0) {
          swap_cols(w, t, j);
          swap_cols(right, t, j);
          settled = false;
          break;
        }
      }
      if (!settled) continue;
      // divisibility of the remaining block by the pivot
      for (int i = t + 1; i < w.rows && settled; ++i)
        for (int j = t + 1; j < w.cols && settled; ++j)
          if (w.at(i, j) % w.at(t, t) != 0) {
            row_axpy(w, t, i, Int(-1));
            row_axpy(left, t, i, Int(-1));
            settled = false;
          }
    }
    if (w.at(t, t) < 0) {
      negate_row(w, t);
      negate_row(left, t);
    }
    ++t;
  }
  SNF out;
  out.left = std::move(left);
  out.right = std::move(right);
  for (int i = 0; i < t; ++i) out.invariants.push_back(w.at(i, i));
  return out;
}

HNF hermite_normal_form(const IntMat& m) {
  IntMat h = m;
  IntMat u = IntMat::identity(m.rows);
  int r = 0;
  for (int j = 0; j < h.cols && r < h.rows; ++j) {
    // gcd elimination in column j among rows >= r
    while (true) {
      int p = -1;
      for (int i = r; i < h.rows; ++i)
        if (h.at(i, j) != 0 && (p < 0 || abs(h.at(i, j)) < abs(h.at(p, j)))) p = i;
      if (p < 0) break;
      swap_rows(h, r, p);
      swap_rows(u, r, p);
      bool clear = true;
      for (int i = r + 1; i < h.rows; ++i) {
        if (h.at(i, j) == 0) continue;
        Int q = h.at(i, j) / h.at(r, j);
        row_axpy(h, i, r, q);
        row_axpy(u, i, r, q);
        if (h.at(i, j) != 0) clear = false;
      }
      if (clear) break;
    }
    if (r < h.rows && h.at(r, j) != 0) {
      if (h.at(r, j) < 0) {
        negate_row(h, r);
        negate_row(u, r);
      }
      for (int i = 0; i < r; ++i) {
        Int q = fdiv(h.at(i, j), h.at(r, j));
        row_axpy(h, i, r, q);
        row_axpy(u, i, r, q);
      }
      ++r;
    }
  }
  HNF out;
  out.h = std::move(h);
  out.u = std::move(u);
  out.rank = r;
  return out;
}

int int_rank(const IntMat& m) { return hermite_normal_form(m).rank; }

Int determinant(const IntMat& m) {
  if (m.rows != m.cols) throw ZplError("bad-matrix", "determinant of a non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  IntMat w = m;
  Int sign = 1;
  Int prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (w.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (w.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      swap_rows(w, k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
    prev = w.at(k, k);
  }
  return sign * w.at(n - 1, n - 1);
}

IntMat inverse_unimodular(const IntMat& m) {
  if (m.rows != m.cols) throw ZplError("bad-matrix", "inverse of a non-square matrix");
  SNF s = smith_normal_form(m);
  if (int(s.invariants.size()) != m.rows)
    throw ZplError("bad-matrix", "inverse of a singular matrix");
  for (const Int& d : s.invariants)
    if (d != 1) throw ZplError("bad-matrix", "matrix is not unimodular");
  // left * m * right = I, so m^{-1} = right * left
  return s.right.mul(s.left);
}

Lattice Lattice::full(int n) {
  Lattice l;
  l.ambient = n;
  l.basis = IntMat::identity(n);
  return l;
}

Lattice Lattice::zero(int n) {
  Lattice l;
  l.ambient = n;
  l.basis = IntMat(0, n);
  return l;
}

Lattice Lattice::from_generators(int n, const std::vector<IVec>& gens) {
  HNF h = hermite_normal_form(IntMat::from_rows(gens, n));
  Lattice l;
  l.ambient = n;
  l.basis = IntMat(h.rank, n);
  for (int i = 0; i < h.rank; ++i)
    for (int j = 0; j < n; ++j) l.basis.at(i, j) = h.h.at(i, j);
  return l;
}

bool Lattice::contains(const IVec& v) const {
  if (int(v.size()) != ambient) throw ZplError("bad-matrix", "vector length mismatch");
  IVec w = v;
  // back-substitution against the echelon rows
  for (int i = 0; i < basis.rows; ++i) {
    int p = 0;
    while (p < ambient && basis.at(i, p) == 0) ++p;
    if (p == ambient) continue;
    if (w[p] % basis.at(i, p) != 0) return false;
    Int c = w[p] / basis.at(i, p);
    for (int j = 0; j < ambient; ++j) w[j] -= c * basis.at(i, j);
  }
  return zpl::is_zero(w);
}

std::optional<QVec> Lattice::span_coords(const QVec& v) const {
  if (int(v.size()) != ambient) throw ZplError("bad-matrix", "vector length mismatch");
  QVec w = v;
  QVec coords(basis.rows, Rat(0));
  for (int i = 0; i < basis.rows; ++i) {
    int p = 0;
    while (p < ambient && basis.at(i, p) == 0) ++p;
    if (p == ambient) continue;
    Rat c = w[p] / Rat(basis.at(i, p));
    coords[i] = c;
    for (int j = 0; j < ambient; ++j) w[j] -= c * Rat(basis.at(i, j));
  }
  if (!zpl::is_zero(w)) return std::nullopt;
  return coords;
}

IVec Lattice::from_coords(const IVec& c) const {
  if (int(c.size()) != basis.rows) throw ZplError("bad-matrix", "coordinate length mismatch");
  IVec v(ambient, Int(0));
  for (int i = 0; i < basis.rows; ++i)
    for (int j = 0; j < ambient; ++j) v[j] += c[i] * basis.at(i, j);
  return v;
}

QVec Lattice::from_coords_q(const QVec& c) const {
  if (int(c.size()) != basis.rows) throw ZplError("bad-matrix", "coordinate length mismatch");
  QVec v(ambient, Rat(0));
  for (int i = 0; i < basis.rows; ++i)
    for (int j = 0; j < ambient; ++j) v[j] += c[i] * Rat(basis.at(i, j));
  return v;
}

bool map_is_injective(const LatticeMap& f) { return int_rank(f.matrix) == f.source.rank(); }

std::optional<Int> lattice_index(const LatticeMap& f) {
  SNF s = smith_normal_form(f.matrix);
  int rank = int(s.invariants.size());
  // non-injective maps and rank drops both have infinite index
  if (rank != f.source.rank() || rank < f.target.rank()) return std::nullopt;
  Int idx = 1;
  for (const Int& d : s.invariants) idx *= d;
  return idx;
}

std::optional<Int> subgroup_index(const std::vector<IVec>& target, const std::vector<IVec>& gens, int ambient) {
  Lattice big = Lattice::from_generators(ambient, target);
  // express generators in the basis of `big`
  std::vector<IVec> cols;
  for (const IVec& g : gens) {
    auto c = big.span_coords(to_q(g));
    if (!c) throw ZplError("not-a-sublattice", "generator outside the target span " + vec_str(g));
    cols.push_back(to_i(*c));
  }
  IntMat m = IntMat::from_cols(cols, big.rank());
  SNF s = smith_normal_form(m);
  if (int(s.invariants.size()) < big.rank()) return std::nullopt;
  Int idx = 1;
  for (const Int& d : s.invariants) idx *= d;
  return idx;
}

std::optional<IVec> solve_integer(const IntMat& a, const IVec& b) {
  SNF s = smith_normal_form(a);
  IVec c = s.left.apply(b);
  int rank = int(s.invariants.size());
  IVec y(a.cols, Int(0));
  for (int i = 0; i < a.rows; ++i) {
    if (i < rank) {
      if (c[i] % s.invariants[i] != 0) return std::nullopt;
      y[i] = c[i] / s.invariants[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.right.apply(y);
}

std::optional<QVec> solve_rational(const IntMat& a, const QVec& b) {
  SNF s = smith_normal_form(a);
  QVec c = s.left.apply_q(b);
  int rank = int(s.invariants.size());
  QVec y(a.cols, Rat(0));
  for (int i = 0; i < a.rows; ++i) {
    if (i < rank)
      y[i] = c[i] / Rat(s.invariants[i]);
    else if (c[i] != 0)
      return std::nullopt;
  }
  return s.right.apply_q(y);
}

Lattice kernel_saturation(const IntMat& a) {
  SNF s = smith_normal_form(a);
  int rank = int(s.invariants.size());
  std::vector<IVec> gens;
  for (int j = rank; j < a.cols; ++j) gens.push_back(s.right.col(j));
  return Lattice::from_generators(a.cols, gens);
}

Rat minimal_scaling_rho(const IntMat& a, const QVec& b) {
  if (zpl::is_zero(b)) throw ZplError("b-zero", "scaling target is the zero vector");
  SNF s = smith_normal_form(a);
  QVec c = s.left.apply_q(b);
  int rank = int(s.invariants.size());
  for (int i = rank; i < a.rows; ++i)
    if (c[i] != 0)
      throw ZplError("no-rational-solution", "system is rationally unsolvable for every scaling");
  Rat rho = 0;
  for (int i = 0; i < rank; ++i) {
    if (c[i] == 0) continue;
    Rat step = Rat(s.invariants[i]) / abs(c[i]);
    rho = (rho == 0) ? step : rat_lcm(rho, step);
  }
  if (rho == 0) throw ZplError("no-rational-solution", "target pairs to zero against the row space");
  return rho;
}

}  // namespace zpl
