#include "zpl/cones.hpp"

#include <algorithm>
#include <set>

namespace zpl {

namespace {

// All k-subsets of {0..n-1}, visited in lexicographic order.
template <typename F>
void for_each_subset(int n, int k, F&& fn) {
  if (k > n || k < 0) return;
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  while (true) {
    fn(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

// Primitive generator of the 1-dimensional kernel of the matrix whose rows
// are the selected vectors; nullopt when the kernel is not 1-dimensional.
std::optional<IVec> line_normal(const std::vector<IVec>& vecs, const std::vector<int>& sel, int d) {
  std::vector<IVec> rows;
  rows.reserve(sel.size());
  for (int i : sel) rows.push_back(vecs[i]);
  Lattice k = kernel_saturation(IntMat::from_rows(rows, d));
  if (k.rank() != 1) return std::nullopt;
  return primitive(k.basis.row(0));
}

}  // namespace

ConeGeom cone_geometry(const std::vector<IVec>& rays, int ambient) {
  ConeGeom c;
  c.ambient = ambient;
  for (const IVec& r : rays) {
    if (int(r.size()) != ambient) throw ZplError("bad-cone", "ray dimension mismatch");
    if (is_zero(r)) throw ZplError("bad-cone", "zero ray");
    IVec p = primitive(r);
    if (std::find(c.rays.begin(), c.rays.end(), p) == c.rays.end()) c.rays.push_back(p);
  }
  // saturated span: vectors killed by every covector that kills the rays
  IntMat ray_rows = IntMat::from_rows(c.rays, ambient);
  Lattice cov = kernel_saturation(ray_rows);
  c.span = kernel_saturation(cov.basis);
  int d = c.span.rank();
  for (const IVec& r : c.rays) {
    auto coords = c.span.span_coords(to_q(r));
    if (!coords) throw ZplError("bad-cone", "ray escapes its own span");
    c.rays_local.push_back(to_i(*coords));
  }
  // facet normals: kernels of (d-1)-subsets of rays with one-sided sign
  std::set<IVec> seen;
  for_each_subset(int(c.rays_local.size()), d > 0 ? d - 1 : 0, [&](const std::vector<int>& sel) {
    if (d == 0) return;
    auto u = line_normal(c.rays_local, sel, d);
    if (!u) return;
    bool nonneg = true, nonpos = true;
    for (const IVec& r : c.rays_local) {
      Int p = dot(*u, r);
      if (p < 0) nonneg = false;
      if (p > 0) nonpos = false;
    }
    if (!nonneg && !nonpos) return;
    IVec f = *u;
    if (!nonneg)
      for (Int& x : f) x = -x;
    if (seen.insert(f).second) c.facets_local.push_back(f);
  });
  std::sort(c.facets_local.begin(), c.facets_local.end());
  return c;
}

bool cone_contains(const ConeGeom& c, const QVec& x) {
  auto coords = c.span.span_coords(x);
  if (!coords) return false;
  for (const IVec& f : c.facets_local)
    if (dotQ(f, *coords) < 0) return false;
  return true;
}

bool cone_strictly_convex(const ConeGeom& c) {
  for (const IVec& r : c.rays) {
    QVec neg(r.size());
    for (size_t i = 0; i < r.size(); ++i) neg[i] = -Rat(r[i]);
    if (cone_contains(c, neg)) return false;
  }
  return true;
}

std::vector<std::vector<int>> cone_faces(const ConeGeom& c) {
  int n = int(c.rays_local.size());
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::set<std::vector<int>> faces{all};
  std::vector<std::vector<int>> work{all};
  while (!work.empty()) {
    std::vector<int> face = work.back();
    work.pop_back();
    for (const IVec& f : c.facets_local) {
      std::vector<int> cut;
      for (int i : face)
        if (dot(f, c.rays_local[i]) == 0) cut.push_back(i);
      if (faces.insert(cut).second) work.push_back(cut);
    }
  }
  return std::vector<std::vector<int>>(faces.begin(), faces.end());
}

std::vector<IVec> rays_from_facets(const std::vector<IVec>& facets, int d) {
  std::vector<IVec> out;
  std::set<IVec> seen;
  if (d == 0) return out;
  if (d == 1) {
    // scalar normals all share a sign when the cone is pointed and nonzero
    for (const IVec& f : facets)
      if (f[0] != 0) {
        IVec r{f[0] > 0 ? Int(1) : Int(-1)};
        if (seen.insert(r).second) out.push_back(r);
      }
    return out;
  }
  for_each_subset(int(facets.size()), d - 1, [&](const std::vector<int>& sel) {
    auto u = line_normal(facets, sel, d);
    if (!u) return;
    bool nonneg = true, nonpos = true;
    for (const IVec& f : facets) {
      Int p = dot(f, *u);
      if (p < 0) nonneg = false;
      if (p > 0) nonpos = false;
    }
    if (!nonneg && !nonpos) return;
    IVec r = *u;
    if (!nonneg)
      for (Int& x : r) x = -x;
    if (seen.insert(r).second) out.push_back(r);
  });
  return out;
}

std::vector<IVec> canonical_rays(const std::vector<IVec>& rays, int ambient) {
  ConeGeom c = cone_geometry(rays, ambient);
  if (!cone_strictly_convex(c)) throw ZplError("not-strictly-convex", "cone contains a line");
  int d = c.dim();
  std::vector<IVec> out;
  for (size_t i = 0; i < c.rays.size(); ++i) {
    // extremal: the facets through the ray cut out a 1-dimensional face
    std::vector<IVec> through;
    for (const IVec& f : c.facets_local)
      if (dot(f, c.rays_local[i]) == 0) through.push_back(f);
    if (int_rank(IntMat::from_rows(through, d)) >= d - 1) out.push_back(c.rays[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IVec> dual_cone_rays(const std::vector<IVec>& rays, int ambient) {
  ConeGeom c = cone_geometry(rays, ambient);
  if (c.dim() != ambient) throw ZplError("not-full-rank", "dual cone needs full-rank input");
  if (!cone_strictly_convex(c)) throw ZplError("not-strictly-convex", "dual cone of a non-pointed cone is not full-dimensional");
  std::vector<IVec> out = rays_from_facets(c.rays, ambient);
  std::sort(out.begin(), out.end());
  return out;
}

IVec positive_grading(const ConeGeom& c) {
  IVec g(c.dim(), Int(0));
  for (const IVec& f : c.facets_local)
    for (int i = 0; i < c.dim(); ++i) g[i] += f[i];
  return g;
}

}  // namespace zpl
