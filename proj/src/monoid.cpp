#include "zpl/monoid.hpp"

#include <algorithm>
#include <map>

namespace zpl {

namespace {

bool in_cone_local(const ConeGeom& c, const IVec& x) {
  for (const IVec& f : c.facets_local)
    if (dot(f, x) < 0) return false;
  return true;
}

// Lattice points of {x in cone : <grading, x> <= bound}, zero excluded.
std::vector<IVec> graded_slab_points(const ConeGeom& c, const IVec& grading, const Int& bound) {
  int d = c.dim();
  std::vector<IVec> out;
  if (d == 0) return out;
  // the slab is the convex hull of 0 and bound/g_i * r_i
  QVec lo(d, Rat(0)), hi(d, Rat(0));
  for (const IVec& r : c.rays_local) {
    Int g = dot(grading, r);
    for (int j = 0; j < d; ++j) {
      Rat v = Rat(bound * r[j], g);
      lo[j] = std::min(lo[j], v);
      hi[j] = std::max(hi[j], v);
    }
  }
  IVec cur(d), lo_i(d), hi_i(d);
  for (int j = 0; j < d; ++j) {
    // floor/ceil of the rational bounds
    lo_i[j] = num(lo[j]) / den(lo[j]) - (num(lo[j]) % den(lo[j]) != 0 && lo[j] < 0 ? 1 : 0);
    hi_i[j] = num(hi[j]) / den(hi[j]) + (num(hi[j]) % den(hi[j]) != 0 && hi[j] > 0 ? 1 : 0);
    cur[j] = lo_i[j];
  }
  while (true) {
    if (!is_zero(cur) && dot(grading, cur) <= bound && in_cone_local(c, cur)) out.push_back(cur);
    int j = 0;
    while (j < d) {
      if (cur[j] < hi_i[j]) {
        ++cur[j];
        break;
      }
      cur[j] = lo_i[j];
      ++j;
    }
    if (j == d) break;
  }
  return out;
}

}  // namespace

bool monoid_is_sharp(const AffineMonoid& m) {
  if (m.generators.empty()) return true;
  return cone_strictly_convex(cone_geometry(m.generators, m.ambient));
}

bool monoid_contains(const AffineMonoid& m, const IVec& v) {
  if (int(v.size()) != m.ambient) throw ZplError("bad-matrix", "vector length mismatch");
  if (is_zero(v)) return true;
  if (m.generators.empty()) return false;
  ConeGeom c = cone_geometry(m.generators, m.ambient);
  if (!cone_strictly_convex(c)) throw ZplError("not-strictly-convex", "membership needs a sharp monoid");
  auto coords = c.span.span_coords(to_q(v));
  if (!coords) return false;
  IVec x;
  try {
    x = to_i(*coords);
  } catch (const ZplError&) {
    return false;
  }
  std::vector<IVec> gens_local;
  for (const IVec& g : m.generators) gens_local.push_back(to_i(*c.span.span_coords(to_q(g))));
  std::map<IVec, bool> memo;
  auto descend = [&](auto&& self, const IVec& y) -> bool {
    if (is_zero(y)) return true;
    auto it = memo.find(y);
    if (it != memo.end()) return it->second;
    memo[y] = false;  // settled below; grading strictly drops so no cycles
    bool ok = false;
    for (const IVec& g : gens_local) {
      IVec z(y.size());
      for (size_t i = 0; i < y.size(); ++i) z[i] = y[i] - g[i];
      if (in_cone_local(c, z) && self(self, z)) {
        ok = true;
        break;
      }
    }
    memo[y] = ok;
    return ok;
  };
  if (!in_cone_local(c, x)) return false;
  return descend(descend, x);
}

std::vector<IVec> hilbert_basis(const std::vector<IVec>& cone_rays, int ambient) {
  if (cone_rays.empty()) return {};
  ConeGeom c = cone_geometry(cone_rays, ambient);
  if (!cone_strictly_convex(c)) throw ZplError("not-strictly-convex", "cone contains a line");
  int d = c.dim();
  if (d == 0) return {};
  IVec grading = positive_grading(c);
  Int bound = 0;
  for (const IVec& r : c.rays_local) bound += dot(grading, r);
  std::vector<IVec> cand = graded_slab_points(c, grading, bound);
  std::sort(cand.begin(), cand.end(), [&](const IVec& a, const IVec& b) {
    Int ga = dot(grading, a), gb = dot(grading, b);
    if (ga != gb) return ga < gb;
    return a < b;
  });
  std::vector<IVec> basis_local;
  for (size_t i = 0; i < cand.size(); ++i) {
    bool reducible = false;
    for (size_t k = 0; k < i && !reducible; ++k) {
      IVec diff(d, Int(0));
      for (int j = 0; j < d; ++j) diff[j] = cand[i][j] - cand[k][j];
      if (in_cone_local(c, diff)) reducible = true;
    }
    if (!reducible) basis_local.push_back(cand[i]);
  }
  std::vector<IVec> out;
  for (const IVec& x : basis_local) out.push_back(to_i(c.span.from_coords_q(to_q(x))));
  std::sort(out.begin(), out.end());
  return out;
}

AffineMonoid dual_monoid(const AffineMonoid& m) {
  if (!monoid_is_sharp(m)) throw ZplError("not-sharp", "dual monoid needs a sharp monoid");
  if (m.generators.empty()) return AffineMonoid{0, {}};
  ConeGeom c = cone_geometry(m.generators, m.ambient);
  int d = c.dim();
  // dual cone of a full-dimensional pointed cone, in span coordinates
  std::vector<IVec> dual_rays = rays_from_facets(c.rays_local, d);
  AffineMonoid out;
  out.ambient = d;
  out.generators = hilbert_basis(dual_rays, d);
  return out;
}

AffineMonoid saturation(const AffineMonoid& m) {
  AffineMonoid out;
  out.ambient = m.ambient;
  out.generators = hilbert_basis(m.generators, m.ambient);
  return out;
}

FacePoset face_poset(const AffineMonoid& m) {
  FacePoset out;
  ConeGeom c = cone_geometry(m.generators, m.ambient);
  auto faces = cone_faces(c);
  for (const auto& rs : faces) {
    MonoidFace f;
    f.ray_set = rs;
    f.monoid.ambient = m.ambient;
    for (const IVec& g : m.generators) {
      IVec p = primitive(g);
      for (int i : rs)
        if (c.rays[i] == p) {
          f.monoid.generators.push_back(g);
          break;
        }
    }
    std::vector<IVec> sub;
    for (int i : rs) sub.push_back(c.rays[i]);
    f.height = sub.empty() ? 0 : cone_geometry(sub, m.ambient).dim();
    out.faces.push_back(std::move(f));
  }
  for (size_t i = 0; i < out.faces.size(); ++i)
    for (size_t j = 0; j < out.faces.size(); ++j) {
      if (i == j) continue;
      if (std::includes(out.faces[j].ray_set.begin(), out.faces[j].ray_set.end(),
                        out.faces[i].ray_set.begin(), out.faces[i].ray_set.end()))
        out.relation.emplace_back(int(i), int(j));
    }
  return out;
}

}  // namespace zpl
