#pragma once

#include <initializer_list>

#include "zpl/numeric.hpp"

namespace zpl {

// Dense row-major integer matrix. Rows and columns may be zero; a 0xN or Nx0
// matrix is a valid (empty) map.
struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Int(0)) {}
  IntMat(std::initializer_list<std::initializer_list<Int>> init) {
    rows = int(init.size());
    cols = rows ? int(init.begin()->size()) : 0;
    a.reserve(size_t(rows) * cols);
    for (const auto& row : init) {
      if (int(row.size()) != cols) throw ZplError("bad-matrix", "ragged initializer");
      for (const Int& x : row) a.push_back(x);
    }
  }

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  // Rows of `rows_in` become the rows of the matrix.
  static IntMat from_rows(const std::vector<IVec>& rows_in, int ncols) {
    IntMat m(int(rows_in.size()), ncols);
    for (int i = 0; i < m.rows; ++i) {
      if (int(rows_in[i].size()) != ncols) throw ZplError("bad-matrix", "row length mismatch");
      for (int j = 0; j < ncols; ++j) m.at(i, j) = rows_in[i][j];
    }
    return m;
  }

  static IntMat from_cols(const std::vector<IVec>& cols_in, int nrows) {
    IntMat m(nrows, int(cols_in.size()));
    for (int j = 0; j < m.cols; ++j) {
      if (int(cols_in[j].size()) != nrows) throw ZplError("bad-matrix", "column length mismatch");
      for (int i = 0; i < nrows; ++i) m.at(i, j) = cols_in[j][i];
    }
    return m;
  }

  Int& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  IVec row(int i) const {
    IVec r(cols);
    for (int j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
  }

  IVec col(int j) const {
    IVec c(rows);
    for (int i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
  }

  std::vector<IVec> row_list() const {
    std::vector<IVec> r;
    r.reserve(rows);
    for (int i = 0; i < rows; ++i) r.push_back(row(i));
    return r;
  }

  std::vector<IVec> col_list() const {
    std::vector<IVec> c;
    c.reserve(cols);
    for (int j = 0; j < cols; ++j) c.push_back(col(j));
    return c;
  }

  IntMat transpose() const {
    IntMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  IntMat mul(const IntMat& o) const {
    if (cols != o.rows) throw ZplError("bad-matrix", "dimension mismatch in product");
    IntMat p(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const Int& x = at(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols; ++j) p.at(i, j) += x * o.at(k, j);
      }
    return p;
  }

  IVec apply(const IVec& v) const {
    if (int(v.size()) != cols) throw ZplError("bad-matrix", "vector length mismatch");
    IVec r(rows, Int(0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r[i] += at(i, j) * v[j];
    return r;
  }

  QVec apply_q(const QVec& v) const {
    if (int(v.size()) != cols) throw ZplError("bad-matrix", "vector length mismatch");
    QVec r(rows, Rat(0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r[i] += Rat(at(i, j)) * v[j];
    return r;
  }

  bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  bool is_zero() const {
    for (const Int& x : a)
      if (x != 0) return false;
    return true;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < rows; ++i) {
      if (i) s += "; ";
      for (int j = 0; j < cols; ++j) {
        if (j) s += " ";
        s += at(i, j).str();
      }
    }
    return s + "]";
  }
};

}  // namespace zpl
