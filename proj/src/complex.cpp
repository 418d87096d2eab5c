#include "zpl/complex.hpp"

#include <algorithm>

namespace zpl {

namespace {

std::string ray_set_str(const std::vector<IVec>& rays, const std::vector<int>& idx) {
  std::string s = "{";
  for (size_t k = 0; k < idx.size(); ++k) {
    if (k) s += ",";
    s += vec_str(rays[idx[k]]);
  }
  return s + "}";
}

// Sorted canonical ray set of the image of an embedding.
std::vector<IVec> image_rays(const ConicalFace& sub, const Embedding& e) {
  std::vector<IVec> out;
  for (const IVec& r : sub.rays) out.push_back(e.matrix.apply(r));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool immersion_ok(const IntMat& m, int sub_rank) {
  SNF s = smith_normal_form(m);
  if (int(s.invariants.size()) != sub_rank) return false;
  for (const Int& d : s.invariants)
    if (d != 1) return false;
  return true;
}

struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

const ConicalFace& face_of(const PLComplex& c, const std::string& id) {
  auto it = c.faces.find(id);
  if (it == c.faces.end()) throw ZplError("unknown-face", "no face named '" + id + "'");
  return it->second;
}

bool complex_is_conical(const PLComplex& c) {
  for (const auto& [id, f] : c.faces)
    if (!is_zero(f.varpi)) return false;
  return true;
}

int complex_dim(const PLComplex& c) {
  int maxrank = 0;
  for (const auto& [id, f] : c.faces) maxrank = std::max(maxrank, f.rank);
  return complex_is_conical(c) ? maxrank : maxrank - 1;
}

bool complex_is_pure(const PLComplex& c) {
  if (c.faces.empty()) return true;
  std::set<std::string> has_coface;
  for (const Embedding& e : c.embeddings) has_coface.insert(e.sub);
  int maxrank = 0;
  for (const auto& [id, f] : c.faces) maxrank = std::max(maxrank, f.rank);
  for (const auto& [id, f] : c.faces)
    if (!has_coface.count(id) && f.rank != maxrank) return false;
  return true;
}

bool complex_is_simplicial(const PLComplex& c) {
  for (const auto& [id, f] : c.faces)
    if (int(f.rays.size()) != f.rank) return false;
  return true;
}

std::vector<std::vector<std::string>> connected_components(const PLComplex& c) {
  std::vector<std::string> ids;
  for (const auto& [id, f] : c.faces) ids.push_back(id);
  std::map<std::string, int> pos;
  for (size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = int(i);
  DSU dsu(int(ids.size()));
  for (const Embedding& e : c.embeddings) {
    auto a = pos.find(e.sub), b = pos.find(e.super);
    if (a != pos.end() && b != pos.end()) dsu.join(a->second, b->second);
  }
  std::map<int, std::vector<std::string>> groups;
  for (size_t i = 0; i < ids.size(); ++i) groups[dsu.find(int(i))].push_back(ids[i]);
  std::vector<std::vector<std::string>> out;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Report validate_complex(const PLComplex& c) {
  Report rep;
  auto flag = [&](const std::string& code, const std::string& detail) {
    rep.violations.push_back({code, detail});
  };

  bool conical = complex_is_conical(c);
  std::map<std::string, ConeGeom> geom;

  for (const auto& [id, f] : c.faces) {
    if (int(f.varpi.size()) != f.rank) {
      flag("varpi-size", "face " + id + ": varpi length != rank");
      continue;
    }
    bool rays_ok = true;
    for (const IVec& r : f.rays) {
      if (int(r.size()) != f.rank) {
        flag("bad-ray", "face " + id + ": ray dimension != rank");
        rays_ok = false;
      } else if (is_zero(r)) {
        flag("bad-ray", "face " + id + ": zero ray");
        rays_ok = false;
      } else if (content(r) != 1) {
        flag("non-primitive-ray", "face " + id + ": ray " + vec_str(r));
        rays_ok = false;
      }
    }
    if (!rays_ok) continue;
    ConeGeom g = cone_geometry(f.rays, f.rank);
    if (g.dim() != f.rank) flag("not-full-dimensional", "face " + id);
    if (!cone_strictly_convex(g)) flag("not-strictly-convex", "face " + id);
    bool positive = false;
    for (const IVec& r : f.rays) {
      Int m = dot(f.varpi, r);
      if (m < 0) flag("varpi-negative", "face " + id + ": ray " + vec_str(r));
      if (m > 0) positive = true;
    }
    if (!conical && !positive && !is_zero(f.varpi))
      flag("empty-slice", "face " + id + ": varpi vanishes on the cone");
    if (!conical && is_zero(f.varpi))
      flag("mixed-type", "face " + id + ": conical face inside a sliced complex");
    geom.emplace(id, std::move(g));
  }
  if (!rep.ok()) return rep;  // geometric checks below assume sane faces

  for (size_t i = 0; i < c.embeddings.size(); ++i) {
    const Embedding& e = c.embeddings[i];
    if (!c.faces.count(e.sub) || !c.faces.count(e.super)) {
      flag("unknown-face", "embedding " + std::to_string(i) + " references a missing face");
      continue;
    }
    const ConicalFace& sub = c.faces.at(e.sub);
    const ConicalFace& super = c.faces.at(e.super);
    if (e.sub == e.super) {
      flag("self-embedding", "face " + e.sub);
      continue;
    }
    if (e.matrix.rows != super.rank || e.matrix.cols != sub.rank) {
      flag("bad-matrix", "embedding " + e.sub + " -> " + e.super + ": wrong shape");
      continue;
    }
    if (!immersion_ok(e.matrix, sub.rank)) {
      flag("not-immersion", "embedding " + e.sub + " -> " + e.super +
                                ": not injective with torsion-free cokernel");
      continue;
    }
    // varpi pullback
    IVec pulled(sub.rank, Int(0));
    for (int j = 0; j < sub.rank; ++j)
      for (int k = 0; k < super.rank; ++k) pulled[j] += super.varpi[k] * e.matrix.at(k, j);
    if (pulled != sub.varpi)
      flag("varpi-pullback", "embedding " + e.sub + " -> " + e.super + ": pullback " +
                                 vec_str(pulled) + " != " + vec_str(sub.varpi));
    // image must be a proper geometric face
    std::vector<IVec> img = image_rays(sub, e);
    const ConeGeom& g = geom.at(e.super);
    bool found = false, proper = false;
    for (const auto& fs : cone_faces(g)) {
      std::vector<IVec> face_rays;
      for (int k : fs) face_rays.push_back(g.rays[k]);
      std::sort(face_rays.begin(), face_rays.end());
      if (face_rays == img) {
        found = true;
        proper = int(fs.size()) < int(g.rays.size());
        break;
      }
    }
    if (!found)
      flag("image-not-a-face", "embedding " + e.sub + " -> " + e.super);
    else if (!proper)
      flag("image-not-proper", "embedding " + e.sub + " -> " + e.super);
  }
  if (!rep.ok()) return rep;

  // composition closure: declared composites must themselves be declared
  for (size_t i = 0; i < c.embeddings.size(); ++i)
    for (size_t j = 0; j < c.embeddings.size(); ++j) {
      if (c.embeddings[i].super != c.embeddings[j].sub) continue;
      IntMat comp = c.embeddings[j].matrix.mul(c.embeddings[i].matrix);
      bool declared = false;
      for (const Embedding& e : c.embeddings)
        if (e.sub == c.embeddings[i].sub && e.super == c.embeddings[j].super && e.matrix == comp) {
          declared = true;
          break;
        }
      if (!declared)
        flag("composition-missing", c.embeddings[i].sub + " -> " + c.embeddings[j].super +
                                       " via " + c.embeddings[i].super);
    }

  // one-embedding-per-face axiom: each proper nonzero face of each cone that
  // meets the slice carries exactly one embedding instance
  for (const auto& [id, f] : c.faces) {
    const ConeGeom& g = geom.at(id);
    for (const auto& fs : cone_faces(g)) {
      if (fs.empty() || int(fs.size()) == int(g.rays.size())) continue;
      bool relevant = conical;
      if (!conical)
        for (int k : fs)
          if (dot(f.varpi, g.rays[k]) > 0) relevant = true;
      if (!relevant) continue;
      std::vector<IVec> face_rays;
      for (int k : fs) face_rays.push_back(g.rays[k]);
      std::sort(face_rays.begin(), face_rays.end());
      int count = 0;
      for (const Embedding& e : c.embeddings)
        if (e.super == id && image_rays(c.faces.at(e.sub), e) == face_rays) ++count;
      if (count != 1)
        flag("face-coverage", "face " + id + ": geometric face " + ray_set_str(g.rays, fs) +
                                  " has " + std::to_string(count) + " embeddings");
    }
  }
  return rep;
}

FaceReport analyze_face(const ConicalFace& f) {
  FaceReport r;
  r.rank = f.rank;
  r.ray_count = int(f.rays.size());
  r.simplicial = (r.ray_count == f.rank);
  if (r.simplicial && f.rank > 0)
    r.det = abs(determinant(IntMat::from_cols(f.rays, f.rank)));
  else if (r.simplicial)
    r.det = Int(1);
  r.root_index = content(f.varpi);
  for (int i = 0; i < r.ray_count; ++i) {
    Int m = dot(f.varpi, f.rays[i]);
    r.mults.push_back(m);
    if (m > 0)
      r.vertex_rays.push_back(i);
    else
      r.recession_rays.push_back(i);
  }
  return r;
}

std::vector<QVec> sigma_minus(const ConicalFace& f) {
  FaceReport r = analyze_face(f);
  if (!r.simplicial) throw ZplError("non-simplicial", "truncation needs a simplicial cone");
  if (r.vertex_rays.empty()) throw ZplError("no-vertices", "the slice is empty");
  std::set<QVec> points;
  size_t nrec = r.recession_rays.size();
  for (int vi : r.vertex_rays) {
    QVec v(f.rank);
    for (int j = 0; j < f.rank; ++j) v[j] = Rat(f.rays[vi][j], r.mults[vi]);
    for (size_t mask = 0; mask < (size_t(1) << nrec); ++mask) {
      QVec p = v;
      for (size_t b = 0; b < nrec; ++b)
        if (mask & (size_t(1) << b)) {
          const IVec& n = f.rays[r.recession_rays[b]];
          for (int j = 0; j < f.rank; ++j) p[j] += Rat(n[j]);
        }
      points.insert(p);
    }
  }
  return std::vector<QVec>(points.begin(), points.end());
}

std::vector<FacetRidgePair> facet_ridge_pairs(const PLComplex& c) {
  if (!complex_is_pure(c)) throw ZplError("not-pure", "facet-ridge structure needs a pure complex");
  int maxrank = 0;
  for (const auto& [id, f] : c.faces) maxrank = std::max(maxrank, f.rank);
  std::vector<FacetRidgePair> out;
  for (size_t i = 0; i < c.embeddings.size(); ++i) {
    const Embedding& e = c.embeddings[i];
    const ConicalFace& sub = face_of(c, e.sub);
    const ConicalFace& super = face_of(c, e.super);
    if (super.rank != maxrank || sub.rank != maxrank - 1) continue;
    FacetRidgePair p;
    p.facet = e.super;
    p.ridge = e.sub;
    p.embedding = int(i);
    std::vector<IVec> img = image_rays(sub, e);
    for (size_t k = 0; k < super.rays.size(); ++k)
      if (!std::binary_search(img.begin(), img.end(), super.rays[k])) p.link_rays.push_back(int(k));
    if (p.link_rays.size() == 1) {
      p.extra_ray = p.link_rays[0];
      p.extra_is_vertex = dot(super.varpi, super.rays[*p.extra_ray]) > 0;
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const FacetRidgePair& a, const FacetRidgePair& b) {
    return std::tie(a.facet, a.ridge, a.embedding) < std::tie(b.facet, b.ridge, b.embedding);
  });
  return out;
}

NormalData primitive_normal_vector(const PLComplex& c, const FacetRidgePair& p) {
  if (p.embedding < 0 || p.embedding >= int(c.embeddings.size()))
    throw ZplError("not-facet-ridge", "no such embedding instance");
  const Embedding& e = c.embeddings[p.embedding];
  const ConicalFace& sub = face_of(c, e.sub);
  const ConicalFace& super = face_of(c, e.super);
  if (sub.rank + 1 != super.rank) throw ZplError("not-facet-ridge", "ranks do not differ by one");
  // m: primitive covector killing the embedded ridge lattice
  Lattice ker = kernel_saturation(e.matrix.transpose());
  if (ker.rank() != 1) throw ZplError("not-facet-ridge", "embedded lattice is not corank one");
  IVec m = primitive(ker.basis.row(0));
  bool pos = false, neg = false;
  for (const IVec& r : super.rays) {
    Int v = dot(m, r);
    if (v > 0) pos = true;
    if (v < 0) neg = true;
  }
  if (pos && neg) throw ZplError("not-facet-ridge", "normal covector changes sign on the facet cone");
  if (neg)
    for (Int& x : m) x = -x;
  // n: complete the image lattice to a basis of N_super
  SNF s = smith_normal_form(e.matrix);
  for (const Int& d : s.invariants)
    if (d != 1) throw ZplError("not-facet-ridge", "embedding is not saturated");
  IntMat linv = inverse_unimodular(s.left);
  IVec n = linv.col(super.rank - 1);
  if (dot(m, n) < 0)
    for (Int& x : n) x = -x;
  return {m, n};
}

StarLink star_link(const PLComplex& c, const std::string& tau) {
  face_of(c, tau);
  StarLink out;
  out.entries.push_back({tau, -1, {}});
  std::set<std::string> star{tau};
  for (size_t i = 0; i < c.embeddings.size(); ++i) {
    const Embedding& e = c.embeddings[i];
    if (e.sub != tau) continue;
    const ConicalFace& super = face_of(c, e.super);
    StarEntry entry;
    entry.sigma = e.super;
    entry.embedding = int(i);
    std::vector<IVec> img = image_rays(face_of(c, tau), e);
    for (size_t k = 0; k < super.rays.size(); ++k)
      if (!std::binary_search(img.begin(), img.end(), super.rays[k]))
        entry.link_rays.push_back(int(k));
    star.insert(e.super);
    out.entries.push_back(std::move(entry));
  }
  out.star.assign(star.begin(), star.end());
  std::sort(out.entries.begin(), out.entries.end(), [](const StarEntry& a, const StarEntry& b) {
    return std::tie(a.sigma, a.embedding) < std::tie(b.sigma, b.embedding);
  });
  return out;
}

Report validate_function(const PLComplex& c, const PLFunction& f) {
  Report rep;
  for (const auto& [id, face] : c.faces) {
    auto it = f.covectors.find(id);
    if (it == f.covectors.end()) {
      rep.violations.push_back({"function-missing-face", id});
      continue;
    }
    if (int(it->second.size()) != face.rank)
      rep.violations.push_back({"function-size", id});
  }
  if (!rep.ok()) return rep;
  for (const Embedding& e : c.embeddings) {
    if (!c.faces.count(e.sub) || !c.faces.count(e.super)) continue;
    const QVec& fs = f.covectors.at(e.super);
    const QVec& ft = f.covectors.at(e.sub);
    QVec pulled(ft.size(), Rat(0));
    for (size_t j = 0; j < pulled.size(); ++j)
      for (int k = 0; k < e.matrix.rows; ++k) pulled[j] += fs[k] * Rat(e.matrix.at(k, int(j)));
    if (pulled != ft)
      rep.violations.push_back({"function-pullback", e.sub + " -> " + e.super});
  }
  return rep;
}

RayClasses ray_classes(const PLComplex& c) {
  std::vector<std::pair<std::string, int>> items;
  for (const auto& [id, f] : c.faces)
    for (size_t k = 0; k < f.rays.size(); ++k) items.emplace_back(id, int(k));
  std::map<std::pair<std::string, int>, int> pos;
  for (size_t i = 0; i < items.size(); ++i) pos[items[i]] = int(i);
  DSU dsu(int(items.size()));
  for (const Embedding& e : c.embeddings) {
    const ConicalFace& sub = face_of(c, e.sub);
    const ConicalFace& super = face_of(c, e.super);
    for (size_t j = 0; j < sub.rays.size(); ++j) {
      IVec img = e.matrix.apply(sub.rays[j]);
      for (size_t k = 0; k < super.rays.size(); ++k)
        if (super.rays[k] == img)
          dsu.join(pos.at({e.sub, int(j)}), pos.at({e.super, int(k)}));
    }
  }
  std::map<int, std::vector<int>> groups;
  for (size_t i = 0; i < items.size(); ++i) groups[dsu.find(int(i))].push_back(int(i));
  RayClasses out;
  for (const auto& [root, members] : groups) {
    int cid = int(out.labels.size());
    std::string label;
    for (int m : members) {
      const auto& [fid, ridx] = items[m];
      if (c.faces.at(fid).rank == 1 && (label.empty() || fid < label)) label = fid;
    }
    if (label.empty()) {
      auto lead = items[members.front()];
      for (int m : members) lead = std::min(lead, items[m]);
      label = lead.first + "#" + std::to_string(lead.second);
    }
    out.labels.push_back(label);
    for (int m : members) out.cls[items[m]] = cid;
  }
  return out;
}

PLComplex recession_complex(const PLComplex& c) {
  struct RecData {
    Lattice span;            // recession span inside N_face
    std::vector<IVec> rays;  // local coordinates
    int rank = 0;
  };
  std::map<std::string, RecData> rec;
  for (const auto& [id, f] : c.faces) {
    RecData d;
    std::vector<IVec> rec_rays;
    for (const IVec& r : f.rays)
      if (dot(f.varpi, r) == 0) rec_rays.push_back(r);
    d.span = Lattice::from_generators(f.rank, rec_rays);
    d.rank = d.span.rank();
    for (const IVec& r : rec_rays) d.rays.push_back(to_i(*d.span.span_coords(to_q(r))));
    rec.emplace(id, std::move(d));
  }

  // union-find with transition matrices: identify faces whose recession data
  // become isomorphic under a restricted embedding
  std::map<std::string, std::string> parent;
  std::map<std::string, IntMat> to_parent;
  for (const auto& [id, d] : rec) {
    parent[id] = id;
    to_parent[id] = IntMat::identity(d.rank);
  }
  auto find = [&](const std::string& id) {
    std::string cur = id;
    IntMat acc = IntMat::identity(rec.at(id).rank);
    while (parent.at(cur) != cur) {
      acc = to_parent.at(cur).mul(acc);
      cur = parent.at(cur);
    }
    return std::pair<std::string, IntMat>(cur, acc);
  };

  auto restricted = [&](const Embedding& e) {
    const RecData& ds = rec.at(e.sub);
    const RecData& dt = rec.at(e.super);
    std::vector<IVec> cols;
    for (int j = 0; j < ds.rank; ++j) {
      IVec img = e.matrix.apply(ds.span.basis.row(j));
      cols.push_back(to_i(*dt.span.span_coords(to_q(img))));
    }
    return IntMat::from_cols(cols, dt.rank);
  };

  for (const Embedding& e : c.embeddings) {
    if (!rec.count(e.sub) || !rec.count(e.super)) continue;
    if (rec.at(e.sub).rank != rec.at(e.super).rank) continue;
    auto [ra, ma] = find(e.sub);
    auto [rb, mb] = find(e.super);
    if (ra == rb) continue;
    // join ra under rb with matrix mb * restricted * ma^{-1}
    IntMat m = mb.mul(restricted(e)).mul(inverse_unimodular(ma));
    parent[ra] = rb;
    to_parent[ra] = m;
  }

  // representative per class: lexicographically least member id
  std::map<std::string, std::vector<std::string>> classes;
  for (const auto& [id, d] : rec) classes[find(id).first].push_back(id);
  std::map<std::string, std::string> rep;        // root -> representative id
  std::map<std::string, IntMat> root_to_rep;     // root coords -> rep coords
  for (auto& [root, members] : classes) {
    std::sort(members.begin(), members.end());
    rep[root] = members.front();
    root_to_rep[root] = inverse_unimodular(find(members.front()).second);
  }
  auto to_rep = [&](const std::string& id) {
    auto [root, m] = find(id);
    return std::pair<std::string, IntMat>(rep.at(root), root_to_rep.at(root).mul(m));
  };

  PLComplex out;
  for (const auto& [root, members] : classes) {
    const std::string& id = rep.at(root);
    const RecData& d = rec.at(id);
    ConicalFace f;
    f.rank = d.rank;
    f.rays = d.rays;
    f.varpi = IVec(d.rank, Int(0));
    out.faces[id] = std::move(f);
  }
  std::set<std::tuple<std::string, std::string, std::vector<Int>>> seen;
  for (const Embedding& e : c.embeddings) {
    if (rec.at(e.sub).rank >= rec.at(e.super).rank) continue;
    auto [rs, ms] = to_rep(e.sub);
    auto [rt, mt] = to_rep(e.super);
    // rep_s -> rep_t: mt * restricted(e) * ms^{-1}
    IntMat m = mt.mul(restricted(e)).mul(inverse_unimodular(ms));
    if (seen.insert({rs, rt, m.a}).second) out.embeddings.push_back({rs, rt, m});
  }
  return out;
}

}  // namespace zpl
