#include "zpl/measure.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace zpl {

namespace {

// Gaussian elimination helpers over Q, small dense problems only.

std::vector<QVec> row_reduce(std::vector<QVec> rows) {
  size_t r = 0;
  if (rows.empty()) return rows;
  size_t cols = rows[0].size();
  for (size_t c = 0; c < cols && r < rows.size(); ++c) {
    size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    Rat inv = rows[r][c];
    for (size_t j = 0; j < cols; ++j) rows[r][j] /= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

int q_rank(const std::vector<QVec>& rows) { return int(row_reduce(rows).size()); }

// coordinates of v in the given independent basis, or nullopt
std::optional<QVec> q_coords(const std::vector<QVec>& basis, const QVec& v) {
  if (basis.empty()) return is_zero(v) ? std::optional<QVec>(QVec{}) : std::nullopt;
  size_t n = v.size();
  // solve via elimination on the augmented transpose
  std::vector<QVec> aug(n, QVec(basis.size() + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < basis.size(); ++j) aug[i][j] = basis[j][i];
    aug[i][basis.size()] = v[i];
  }
  size_t r = 0;
  std::vector<int> pivot_col(basis.size(), -1);
  for (size_t c = 0; c < basis.size() && r < n; ++c) {
    size_t piv = r;
    while (piv < n && aug[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(aug[r], aug[piv]);
    Rat inv = aug[r][c];
    for (size_t j = 0; j <= basis.size(); ++j) aug[r][j] /= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      Rat f = aug[i][c];
      for (size_t j = 0; j <= basis.size(); ++j) aug[i][j] -= f * aug[r][j];
    }
    pivot_col[c] = int(r);
    ++r;
  }
  for (size_t i = r; i < n; ++i)
    if (aug[i][basis.size()] != 0) return std::nullopt;
  QVec out(basis.size(), Rat(0));
  for (size_t c = 0; c < basis.size(); ++c)
    if (pivot_col[c] >= 0) out[c] = aug[pivot_col[c]][basis.size()];
  return out;
}

Rat simplex_volume(const std::vector<QVec>& pts, const std::vector<int>& simplex) {
  int d = int(simplex.size()) - 1;
  if (d == 0) return 1;
  // |det| of the direction matrix via exact elimination
  std::vector<QVec> m;
  for (int i = 1; i <= d; ++i) {
    QVec row(d);
    for (int j = 0; j < d; ++j) row[j] = pts[simplex[i]][j] - pts[simplex[0]][j];
    m.push_back(std::move(row));
  }
  Rat det = 1;
  for (int c = 0; c < d; ++c) {
    int piv = -1;
    for (int i = c; i < d; ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int i = c + 1; i < d; ++i) {
      Rat f = m[i][c] / m[c][c];
      for (int j = c; j < d; ++j) m[i][j] -= f * m[c][j];
    }
  }
  if (det < 0) det = -det;
  return det;
}

// Recursive placing triangulation of a point set of affine dimension k,
// returning simplices as index lists into `pts`.
void place(const std::vector<QVec>& pts, const std::vector<int>& active, bool flipped,
           std::vector<std::vector<int>>& out, std::vector<int>& cone_prefix) {
  // local affine coordinates relative to the base point
  int base = active[0];
  for (int i : active)
    if (flipped ? pts[i] > pts[base] : pts[i] < pts[base]) base = i;
  std::vector<QVec> dirs;
  std::vector<int> dir_owner;
  for (int i : active)
    if (i != base) {
      QVec d(pts[i].size());
      for (size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[base][j];
      dirs.push_back(std::move(d));
      dir_owner.push_back(i);
    }
  std::vector<QVec> basis;
  for (const QVec& d : dirs) {
    std::vector<QVec> trial = basis;
    trial.push_back(d);
    if (q_rank(trial) > int(basis.size())) basis = std::move(trial);
  }
  int k = int(basis.size());
  if (k == 0) {
    std::vector<int> s = cone_prefix;
    s.push_back(base);
    out.push_back(std::move(s));
    return;
  }
  // local coordinates in Q^k
  std::map<int, QVec> local;
  local[base] = QVec(k, Rat(0));
  for (size_t t = 0; t < dirs.size(); ++t) local[dir_owner[t]] = *q_coords(basis, dirs[t]);

  // facets: (k-1)-dimensional boundary pieces not through the apex
  std::set<std::vector<int>> seen;
  size_t n = active.size();
  std::vector<int> sel(k);
  std::iota(sel.begin(), sel.end(), 0);
  auto advance = [&]() {
    int i = k - 1;
    while (i >= 0 && sel[i] == int(n) - k + i) --i;
    if (i < 0) return false;
    ++sel[i];
    for (int j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
    return true;
  };
  do {
    std::vector<QVec> plane_dirs;
    const QVec& p0 = local.at(active[sel[0]]);
    for (int t = 1; t < k; ++t) {
      QVec d(k);
      for (int j = 0; j < k; ++j) d[j] = local.at(active[sel[t]])[j] - p0[j];
      plane_dirs.push_back(std::move(d));
    }
    if (q_rank(plane_dirs) != k - 1) continue;
    // normal within Q^k: any vector completing the plane changes the rank;
    // compute by solving for a functional vanishing on plane_dirs
    QVec normal(k, Rat(0));
    {
      std::vector<QVec> red = row_reduce(plane_dirs);
      // find a free column, set it to 1, back-substitute a vector in the
      // orthogonal complement via elimination on the transpose system
      std::vector<QVec> rows;  // constraints normal·dir = 0
      for (const QVec& d : plane_dirs) rows.push_back(d);
      std::vector<QVec> rr = row_reduce(rows);
      std::vector<int> pivots;
      for (const QVec& row : rr) {
        int c = 0;
        while (c < k && row[c] == 0) ++c;
        pivots.push_back(c);
      }
      int free_col = 0;
      while (std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) ++free_col;
      normal[free_col] = 1;
      for (int t = int(rr.size()) - 1; t >= 0; --t) {
        Rat s = 0;
        for (int j = pivots[t] + 1; j < k; ++j) s += rr[t][j] * normal[j];
        normal[pivots[t]] = -s;
      }
      (void)red;
    }
    // one-sided test
    bool pos = false, neg = false;
    std::vector<int> on_plane;
    for (int i : active) {
      Rat v = 0;
      for (int j = 0; j < k; ++j) v += normal[j] * (local.at(i)[j] - p0[j]);
      if (v > 0) pos = true;
      if (v < 0) neg = true;
      if (v == 0) on_plane.push_back(i);
    }
    if (pos && neg) continue;
    std::sort(on_plane.begin(), on_plane.end());
    if (std::binary_search(on_plane.begin(), on_plane.end(), base)) continue;
    if (!seen.insert(on_plane).second) continue;
    cone_prefix.push_back(base);
    place(pts, on_plane, flipped, out, cone_prefix);
    cone_prefix.pop_back();
  } while (advance());
}

std::vector<QVec> dedupe(const std::vector<QVec>& points, std::vector<int>* first_index) {
  std::vector<QVec> out;
  std::map<QVec, int> where;
  for (size_t i = 0; i < points.size(); ++i)
    if (where.emplace(points[i], int(i)).second) out.push_back(points[i]);
  if (first_index) {
    first_index->clear();
    std::sort(out.begin(), out.end());
    for (const QVec& p : out) first_index->push_back(where.at(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

IVec scale_to_integer(const QVec& v) {
  Int denom = 1;
  for (const Rat& x : v) denom = lcm(denom, den(x));
  IVec w(v.size());
  for (size_t j = 0; j < v.size(); ++j) w[j] = num(v[j] * Rat(denom));
  return w;
}

// saturated lattice Z^n ∩ span(vectors), vectors rational
Lattice saturated_span(const std::vector<QVec>& vecs, int n) {
  std::vector<IVec> ints;
  for (const QVec& v : vecs) {
    IVec w = scale_to_integer(v);
    if (!is_zero(w)) ints.push_back(primitive(w));
  }
  if (ints.empty()) return Lattice::zero(n);
  return kernel_saturation(kernel_saturation(IntMat::from_rows(ints, n)).basis);
}

}  // namespace

std::vector<std::vector<int>> triangulate_points(const std::vector<QVec>& points, bool flipped) {
  if (points.empty()) throw ZplError("empty", "no points");
  std::vector<int> first;
  std::vector<QVec> pts = dedupe(points, &first);
  std::vector<int> active(pts.size());
  std::iota(active.begin(), active.end(), 0);
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  place(pts, active, flipped, out, prefix);
  for (auto& s : out)
    for (int& i : s) i = first[i];
  std::sort(out.begin(), out.end());
  return out;
}

VolumeCertificate conformal_volume(const std::vector<QVec>& points, int ambient) {
  if (points.empty()) throw ZplError("empty", "no points");
  for (const QVec& p : points)
    if (int(p.size()) != ambient) throw ZplError("bad-matrix", "point dimension mismatch");
  std::vector<QVec> pts = dedupe(points, nullptr);
  const QVec& p0 = pts[0];
  std::vector<QVec> dirs;
  for (const QVec& p : pts) {
    QVec d(ambient);
    for (int j = 0; j < ambient; ++j) d[j] = p[j] - p0[j];
    if (!is_zero(d)) dirs.push_back(std::move(d));
  }
  VolumeCertificate cert;
  cert.dim = q_rank(dirs);

  bool origin_in_span = bool(q_coords(row_reduce(dirs), p0)) || is_zero(p0);
  std::vector<QVec> local;  // lattice coordinates of the (scaled) points
  if (origin_in_span) {
    cert.rho = 1;
    Lattice span = saturated_span(pts, ambient);
    for (const QVec& p : pts) local.push_back(*span.span_coords(p));
  } else {
    std::vector<IVec> dir_rows;
    for (const QVec& d : dirs) dir_rows.push_back(primitive(scale_to_integer(d)));
    Lattice normals = kernel_saturation(IntMat::from_rows(dir_rows, ambient));
    QVec b = normals.basis.apply_q(p0);
    cert.rho = minimal_scaling_rho(normals.basis, b);
    QVec rb(b.size());
    for (size_t i = 0; i < b.size(); ++i) rb[i] = cert.rho * b[i];
    IVec x0 = *solve_integer(normals.basis, to_i(rb));
    Lattice span = kernel_saturation(normals.basis);
    for (const QVec& p : pts) {
      QVec q(ambient);
      for (int j = 0; j < ambient; ++j) q[j] = cert.rho * p[j] - Rat(x0[j]);
      local.push_back(*span.span_coords(q));
    }
  }
  std::vector<int> active(local.size());
  std::iota(active.begin(), active.end(), 0);
  std::vector<std::vector<int>> tri;
  std::vector<int> prefix;
  place(local, active, false, tri, prefix);
  cert.normalized_volume = 0;
  for (const auto& s : tri) cert.normalized_volume += simplex_volume(local, s);
  if (cert.dim == 0) cert.normalized_volume = 1;
  Rat scale = 1;
  for (int i = 0; i <= cert.dim; ++i) scale *= cert.rho;
  cert.conformal_volume = cert.normalized_volume / scale;
  // report the triangulation against the caller's point list
  std::map<QVec, int> where;
  for (size_t i = 0; i < points.size(); ++i) where.emplace(points[i], int(i));
  for (const auto& s : tri) {
    std::vector<int> t;
    for (int i : s) t.push_back(where.at(pts[i]));
    std::sort(t.begin(), t.end());
    cert.triangulation.push_back(std::move(t));
  }
  std::sort(cert.triangulation.begin(), cert.triangulation.end());
  return cert;
}

VolumeCertificate conformal_volume(const ConicalFace& f) {
  FaceReport r = analyze_face(f);
  if (!r.recession_rays.empty()) throw ZplError("unbounded", "face has recession rays");
  if (r.vertex_rays.empty()) throw ZplError("empty", "slice has no vertices");
  std::vector<QVec> pts;
  for (int i : r.vertex_rays) {
    QVec v(f.rank);
    for (int j = 0; j < f.rank; ++j) v[j] = Rat(f.rays[i][j], r.mults[i]);
    pts.push_back(std::move(v));
  }
  return conformal_volume(pts, f.rank);
}

Rat simplicial_face_volume(const ConicalFace& f) {
  FaceReport r = analyze_face(f);
  if (!r.simplicial) throw ZplError("non-simplicial", "determinant formula needs a simplicial cone");
  if (r.vertex_rays.empty()) throw ZplError("no-vertices", "slice is empty");
  Rat denom = 1;
  for (int i : r.vertex_rays) denom *= Rat(r.mults[i]);
  return Rat(*r.det) / denom;
}

Rat conformal_ratio(const std::vector<QVec>& points, const IntMat& f, int ambient) {
  for (const QVec& p : points)
    if (int(p.size()) != f.cols) throw ZplError("bad-matrix", "map does not accept the points");
  std::vector<QVec> images;
  for (const QVec& p : points) images.push_back(f.apply_q(p));
  VolumeCertificate src = conformal_volume(points, f.cols);
  VolumeCertificate img = conformal_volume(images, ambient);
  if (img.dim != src.dim) throw ZplError("dimension-drop", "image has lower dimension");
  Lattice n1 = saturated_span(points, f.cols);
  Lattice n2 = saturated_span(images, ambient);
  std::vector<IVec> mapped;
  for (int i = 0; i < n1.rank(); ++i) mapped.push_back(f.apply(n1.basis.row(i)));
  if (int_rank(IntMat::from_rows(mapped, ambient)) != n1.rank())
    throw ZplError("dimension-drop", "map is not injective on the span lattice");
  std::vector<IVec> target_rows;
  for (int i = 0; i < n2.rank(); ++i) target_rows.push_back(n2.basis.row(i));
  auto index = subgroup_index(target_rows, mapped, ambient);
  Rat ratio = img.conformal_volume / src.conformal_volume;
  if (!index || Rat(*index) != ratio)
    throw ZplError("dimension-drop", "volume ratio disagrees with the lattice index");
  return ratio;
}

}  // namespace zpl
