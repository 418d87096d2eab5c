#include "zpl/subdivide.hpp"

#include "zpl/monoid.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace zpl {

namespace {

std::vector<IVec> canonical_cone(const std::vector<IVec>& rays, int ambient) {
  return canonical_rays(cone_geometry(rays, ambient));
}

// integer coordinates of v in the rows of a saturated lattice basis
IVec lattice_coords(const Lattice& l, const IVec& v) {
  auto c = l.span_coords(to_q(v));
  if (!c) throw ZplError("incompatible-subdivision", "vector left its span");
  return to_i(*c);
}

IntMat compose3(const IntMat& a, const IntMat& b, const IntMat& c) { return a.mul(b).mul(c); }

}  // namespace

ComplexMap assemble_subdivision(const PLComplex& c, const std::map<std::string, LocalFan>& fans) {
  struct Member {
    std::string face;
    std::vector<IVec> rays;  // canonical, face-local coords
    ConeGeom geom;
  };

  // per-face cone sets, closed under taking faces
  std::map<std::string, std::set<std::vector<IVec>>> cones;
  for (const auto& [id, f] : c.faces) {
    std::set<std::vector<IVec>>& cs = cones[id];
    std::vector<std::vector<IVec>> tops;
    auto it = fans.find(id);
    if (it != fans.end() && !it->second.top_cones.empty())
      tops = it->second.top_cones;
    else
      tops.push_back(f.rays);
    for (const auto& t : tops) {
      ConeGeom g = cone_geometry(canonical_cone(t, f.rank), f.rank);
      for (const auto& fs : cone_faces(g)) {
        if (fs.empty()) continue;
        std::vector<IVec> rays;
        for (int k : fs) rays.push_back(g.rays[k]);
        std::sort(rays.begin(), rays.end());
        cs.insert(std::move(rays));
      }
    }
  }

  std::vector<Member> members;
  std::map<std::pair<std::string, std::vector<IVec>>, int> index;
  for (const auto& [id, cs] : cones)
    for (const auto& rays : cs) {
      index[{id, rays}] = int(members.size());
      members.push_back({id, rays, cone_geometry(rays, c.faces.at(id).rank)});
    }

  // union-find with coordinate-change matrices (member-local -> parent-local)
  std::vector<int> parent(members.size());
  std::vector<IntMat> tomat(members.size());
  for (size_t i = 0; i < members.size(); ++i) {
    parent[i] = int(i);
    tomat[i] = IntMat::identity(members[i].geom.dim());
  }
  auto find = [&](int i) {
    IntMat acc = IntMat::identity(members[i].geom.dim());
    while (parent[i] != i) {
      acc = tomat[i].mul(acc);
      i = parent[i];
    }
    return std::pair<int, IntMat>(i, acc);
  };
  auto member_iso = [&](int i, const IntMat& map_ij, int j) {
    // matrix of x -> coords_j(map_ij * from_coords_i(x))
    std::vector<IVec> cols;
    for (int k = 0; k < members[i].geom.dim(); ++k)
      cols.push_back(lattice_coords(members[j].geom.span, map_ij.apply(members[i].geom.span.basis.row(k))));
    return IntMat::from_cols(cols, members[j].geom.dim());
  };
  for (const Embedding& e : c.embeddings)
    for (const auto& rays : cones.at(e.sub)) {
      std::vector<IVec> img;
      for (const IVec& r : rays) img.push_back(e.matrix.apply(r));
      std::sort(img.begin(), img.end());
      auto it = index.find({e.super, img});
      if (it == index.end())
        throw ZplError("incompatible-subdivision",
                       "fan of " + e.sub + " does not match the fan of " + e.super);
      int i = index.at({e.sub, rays}), j = it->second;
      auto [ri, mi] = find(i);
      auto [rj, mj] = find(j);
      if (ri == rj) continue;
      parent[ri] = rj;
      tomat[ri] = compose3(mj, member_iso(i, e.matrix, j), inverse_unimodular(mi));
    }

  // classes, representatives, ids
  std::map<int, std::vector<int>> classes;
  for (size_t i = 0; i < members.size(); ++i) classes[find(int(i)).first].push_back(int(i));
  std::map<std::string, std::vector<IVec>> full_cone;
  for (const auto& [id, f] : c.faces) full_cone[id] = canonical_cone(f.rays, f.rank);

  std::map<int, int> rep;           // root -> representative member
  std::map<int, std::string> name;  // root -> new face id
  std::map<std::string, int> fresh;
  for (auto& [root, mem] : classes) {
    std::sort(mem.begin(), mem.end(), [&](int a, int b) {
      return std::tie(members[a].face, members[a].rays) < std::tie(members[b].face, members[b].rays);
    });
    int full = -1;
    for (int m : mem)
      if (members[m].rays == full_cone.at(members[m].face)) full = m;
    rep[root] = full >= 0 ? full : mem.front();
  }
  // deterministic fresh names grouped under the representative's face
  for (auto& [root, mem] : classes) {
    int r = rep.at(root);
    if (members[r].rays == full_cone.at(members[r].face))
      name[root] = members[r].face;
    else
      name[root] = members[r].face + "." + std::to_string(fresh[members[r].face]++);
  }

  auto to_rep = [&](int m) {
    auto [root, acc] = find(m);
    auto [root2, acc_rep] = find(rep.at(root));
    (void)root2;
    return std::pair<int, IntMat>(rep.at(root), inverse_unimodular(acc_rep).mul(acc));
  };

  ComplexMap out;
  out.target = c;
  for (const auto& [root, mem] : classes) {
    const Member& r = members[rep.at(root)];
    const ConicalFace& orig = c.faces.at(r.face);
    ConicalFace f;
    f.rank = r.geom.dim();
    for (const IVec& ray : r.geom.rays_local) f.rays.push_back(ray);
    std::sort(f.rays.begin(), f.rays.end());
    f.varpi.resize(f.rank);
    for (int i = 0; i < f.rank; ++i) f.varpi[i] = dot(orig.varpi, r.geom.span.basis.row(i));
    int carrier = mem.front();
    for (int m : mem)
      if (c.faces.at(members[m].face).rank < c.faces.at(members[carrier].face).rank) carrier = m;
    const ConicalFace& carrier_face = c.faces.at(members[carrier].face);
    f.vertical = carrier_face.vertical;
    if (r.rays == full_cone.at(r.face)) {
      f.genus = orig.genus;
      f.residue_degree = orig.residue_degree;
    }
    out.source.faces[name.at(root)] = std::move(f);
    // subdivision map data: representative-local -> carrier-face coords
    IntMat acc_rep = find(rep.at(root)).second;
    IntMat acc_car = find(carrier).second;
    IntMat t_to_carrier_member = inverse_unimodular(acc_car).mul(acc_rep);
    IntMat into_face = members[carrier].geom.span.basis.transpose().mul(t_to_carrier_member);
    out.face_map[name.at(root)] = members[carrier].face;
    out.lattice_maps[name.at(root)] = into_face;
  }

  // embeddings: every proper nonzero face of every member cone
  std::set<std::tuple<std::string, std::string, std::vector<Int>>> seen;
  for (size_t j = 0; j < members.size(); ++j) {
    const Member& mj = members[j];
    for (const auto& fs : cone_faces(mj.geom)) {
      if (fs.empty() || int(fs.size()) == int(mj.geom.rays.size())) continue;
      std::vector<IVec> g;
      for (int k : fs) g.push_back(mj.geom.rays[k]);
      std::sort(g.begin(), g.end());
      int i = index.at({mj.face, g});
      // sub-member-local -> super-member-local
      std::vector<IVec> cols;
      for (int k = 0; k < members[i].geom.dim(); ++k)
        cols.push_back(lattice_coords(mj.geom.span, members[i].geom.span.basis.row(k)));
      IntMat psi = IntMat::from_cols(cols, mj.geom.dim());
      auto [ri, ti] = to_rep(i);
      auto [rj, tj] = to_rep(int(j));
      IntMat m = compose3(tj, psi, inverse_unimodular(ti));
      std::string sub = name.at(find(ri).first), super = name.at(find(rj).first);
      if (seen.insert({sub, super, m.a}).second) out.source.embeddings.push_back({sub, super, m});
    }
  }
  std::sort(out.source.embeddings.begin(), out.source.embeddings.end(),
            [](const Embedding& a, const Embedding& b) {
              return std::tie(a.sub, a.super, a.matrix.a) < std::tie(b.sub, b.super, b.matrix.a);
            });
  return out;
}

ComplexMap stellar_subdivide(const PLComplex& c, const std::string& face, const IVec& p) {
  const ConicalFace& f = face_of(c, face);
  if (int(p.size()) != f.rank) throw ZplError("not-interior", "point dimension mismatch");
  if (is_zero(p) || content(p) != 1) throw ZplError("not-primitive", vec_str(p));
  ConeGeom g = cone_geometry(f.rays, f.rank);
  if (!cone_contains(g, p)) throw ZplError("not-interior", vec_str(p) + " outside the cone");
  for (const IVec& h : g.facets_local)
    if (dot(h, lattice_coords(g.span, p)) == 0)
      throw ZplError("not-interior", vec_str(p) + " lies on a proper face");

  // images of p in every coface, one embedding instance each
  std::map<std::string, IVec> image;
  image[face] = p;
  std::map<std::string, int> instances;
  for (const Embedding& e : c.embeddings)
    if (e.sub == face) {
      if (++instances[e.super] > 1)
        throw ZplError("multi-adjacent-star",
                       "face " + e.super + " meets " + face + " more than once");
      image[e.super] = e.matrix.apply(p);
    }

  std::map<std::string, LocalFan> fans;
  for (const auto& [id, q] : image) {
    const ConicalFace& s = c.faces.at(id);
    ConeGeom gs = cone_geometry(s.rays, s.rank);
    IVec q_local = lattice_coords(gs.span, q);
    LocalFan fan;
    if (gs.facets_local.empty()) {
      // rank-1 face: p equals the ray, nothing to subdivide
      fan.top_cones.push_back(s.rays);
    } else {
      for (const IVec& h : gs.facets_local) {
        if (dot(h, q_local) == 0) continue;
        std::vector<IVec> top;
        for (size_t k = 0; k < gs.rays.size(); ++k)
          if (dot(h, gs.rays_local[k]) == 0) top.push_back(gs.rays[k]);
        top.push_back(q);
        fan.top_cones.push_back(std::move(top));
      }
    }
    fans[id] = std::move(fan);
  }
  return assemble_subdivision(c, fans);
}

HJResolution hj_resolve_2d(const ConicalFace& f) {
  ConeGeom g = cone_geometry(f.rays, f.rank);
  if (g.dim() != 2) throw ZplError("not-rank-2", "cone span has rank " + std::to_string(g.dim()));
  std::vector<IVec> hb = hilbert_basis(f.rays, f.rank);
  std::vector<IVec> local;
  for (const IVec& v : hb) local.push_back(lattice_coords(g.span, v));
  ConeGeom g2 = cone_geometry(g.rays_local, 2);
  std::vector<IVec> ext = canonical_rays(g2);
  if (ext.size() != 2) throw ZplError("not-rank-2", "cone is not strictly convex of rank 2");
  auto cross = [](const IVec& a, const IVec& b) { return a[0] * b[1] - a[1] * b[0]; };
  IVec r0 = ext[0], r1 = ext[1];
  if (cross(r0, r1) < 0) std::swap(r0, r1);
  std::sort(local.begin(), local.end(), [&](const IVec& a, const IVec& b) { return cross(a, b) > 0; });
  for (size_t i = 0; i + 1 < local.size(); ++i)
    if (abs(cross(local[i], local[i + 1])) != 1)
      throw ZplError("not-rank-2", "internal: consecutive pair not unimodular");
  HJResolution out;
  for (const IVec& v : local) out.rays.push_back(g.span.from_coords(v));
  for (size_t i = 1; i + 1 < local.size(); ++i) out.inserted.push_back(g.span.from_coords(local[i]));
  return out;
}

Report check_proper_subdivision(const ComplexMap& m) {
  Report rep;
  auto flag = [&](const std::string& code, const std::string& detail) {
    rep.violations.push_back({code, detail});
  };
  std::map<std::string, ConeGeom> tgeom;
  for (const auto& [id, f] : m.target.faces) tgeom.emplace(id, cone_geometry(f.rays, f.rank));

  for (const auto& [id, f] : m.source.faces) {
    auto fm = m.face_map.find(id);
    auto lm = m.lattice_maps.find(id);
    if (fm == m.face_map.end() || !m.target.faces.count(fm->second) || lm == m.lattice_maps.end()) {
      flag("missing-face", id);
      continue;
    }
    const ConicalFace& t = m.target.faces.at(fm->second);
    const IntMat& L = lm->second;
    if (L.rows != t.rank || L.cols != f.rank) {
      flag("immersion", id + ": wrong shape");
      continue;
    }
    SNF s = smith_normal_form(L);
    bool imm = int(s.invariants.size()) == f.rank;
    for (const Int& d : s.invariants)
      if (d != 1) imm = false;
    if (!imm) {
      flag("immersion", id);
      continue;
    }
    IVec pulled(f.rank, Int(0));
    for (int j = 0; j < f.rank; ++j)
      for (int k = 0; k < t.rank; ++k) pulled[j] += t.varpi[k] * L.at(k, j);
    if (pulled != f.varpi) flag("varpi", id);
    for (const IVec& r : f.rays)
      if (!cone_contains(tgeom.at(fm->second), L.apply(r)))
        flag("support", id + ": ray image outside the target cone");
  }
  if (!rep.ok()) return rep;

  for (const Embedding& e : m.source.embeddings) {
    const std::string &ft = m.face_map.at(e.sub), &fs = m.face_map.at(e.super);
    IntMat lhs = m.lattice_maps.at(e.super).mul(e.matrix);
    bool ok = false;
    if (ft == fs && lhs == m.lattice_maps.at(e.sub)) ok = true;
    for (const Embedding& te : m.target.embeddings)
      if (te.sub == ft && te.super == fs && te.matrix.mul(m.lattice_maps.at(e.sub)) == lhs) ok = true;
    if (!ok) flag("square", e.sub + " -> " + e.super);
  }

  // support: full-rank pieces over each target face tile its cone
  for (const auto& [tid, t] : m.target.faces) {
    std::vector<std::string> pieces;
    for (const auto& [sid, sf] : m.source.faces)
      if (m.face_map.at(sid) == tid && sf.rank == t.rank) pieces.push_back(sid);
    if (pieces.empty()) {
      flag("support", tid + ": no covering pieces");
      continue;
    }
    std::vector<ConeGeom> pg;
    for (const std::string& sid : pieces) {
      std::vector<IVec> img;
      for (const IVec& r : m.source.faces.at(sid).rays)
        img.push_back(m.lattice_maps.at(sid).apply(r));
      pg.push_back(cone_geometry(canonical_cone(img, t.rank), t.rank));
    }
    for (size_t a = 0; a < pg.size(); ++a)
      for (size_t b = a + 1; b < pg.size(); ++b) {
        std::vector<IVec> cons = pg[a].facets_local;
        cons.insert(cons.end(), pg[b].facets_local.begin(), pg[b].facets_local.end());
        std::vector<IVec> meet = rays_from_facets(cons, t.rank);
        if (!meet.empty() && cone_geometry(meet, t.rank).dim() == t.rank)
          flag("overlap", pieces[a] + " and " + pieces[b] + " in " + tid);
      }
    for (size_t a = 0; a < pg.size(); ++a)
      for (const IVec& h : pg[a].facets_local) {
        std::vector<IVec> facet;
        for (size_t k = 0; k < pg[a].rays.size(); ++k)
          if (dot(h, pg[a].rays_local[k]) == 0) facet.push_back(pg[a].rays[k]);
        std::sort(facet.begin(), facet.end());
        // the origin facet of a ray piece always lies on the target boundary
        bool boundary = facet.empty();
        for (const IVec& gh : tgeom.at(tid).facets_local) {
          bool all = true;
          for (const IVec& r : facet)
            if (dot(gh, lattice_coords(tgeom.at(tid).span, r)) != 0) all = false;
          if (all && !facet.empty()) boundary = true;
        }
        if (boundary) continue;
        int mates = 0;
        for (size_t b = 0; b < pg.size(); ++b) {
          if (b == a) continue;
          for (const IVec& h2 : pg[b].facets_local) {
            std::vector<IVec> facet2;
            for (size_t k = 0; k < pg[b].rays.size(); ++k)
              if (dot(h2, pg[b].rays_local[k]) == 0) facet2.push_back(pg[b].rays[k]);
            std::sort(facet2.begin(), facet2.end());
            if (facet2 == facet) ++mates;
          }
        }
        if (mates != 1)
          flag("support", pieces[a] + ": interior facet shared by " + std::to_string(mates) +
                              " other pieces in " + tid);
      }
  }
  return rep;
}

}  // namespace zpl
