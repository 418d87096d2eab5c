#include "zpl/cover.hpp"

#include <algorithm>

namespace zpl {

namespace {

Int map_index(const IntMat& m) {
  SNF s = smith_normal_form(m);
  if (int(s.invariants.size()) != m.cols) throw ZplError("invalid-cover", "lattice map not injective");
  Int prod = 1;
  for (const Int& d : s.invariants) prod *= d;
  return prod;
}

// the unique target embedding instance the source instance e lies over
int matched_instance(const ComplexCover& phi, const Embedding& e) {
  IntMat lhs = phi.lattice_maps.at(e.super).mul(e.matrix);
  const std::string& ft = phi.face_map.at(e.sub);
  const std::string& fs = phi.face_map.at(e.super);
  for (size_t i = 0; i < phi.target.embeddings.size(); ++i) {
    const Embedding& te = phi.target.embeddings[i];
    if (te.sub == ft && te.super == fs && te.matrix.mul(phi.lattice_maps.at(e.sub)) == lhs)
      return int(i);
  }
  throw ZplError("invalid-cover", "no target instance under " + e.sub + " -> " + e.super);
}

IntMat solve_through(const IntMat& through, const IntMat& m) {
  // X with through * X = m, entries integral
  std::vector<IVec> cols;
  for (int j = 0; j < m.cols; ++j) {
    auto x = solve_rational(through, to_q(m.col(j)));
    if (!x) throw ZplError("incompatible-subdivision", "no factorization through the lattice map");
    cols.push_back(to_i(*x));
  }
  return IntMat::from_cols(cols, through.cols);
}

}  // namespace

Report validate_cover(const ComplexCover& phi) {
  Report rep;
  auto flag = [&](const std::string& code, const std::string& detail) {
    rep.violations.push_back({code, detail});
  };
  std::map<std::string, ConeGeom> tgeom;
  for (const auto& [id, f] : phi.target.faces) tgeom.emplace(id, cone_geometry(f.rays, f.rank));

  // the target covector pulls back to a single positive multiple of the
  // source one across all faces (1 for covers over the same base, the
  // ramification index for base changes such as dilations)
  std::optional<Int> ram;
  for (const auto& [id, f] : phi.source.faces) {
    auto fm = phi.face_map.find(id);
    if (fm == phi.face_map.end() || !phi.target.faces.count(fm->second)) {
      flag("missing-face", id);
      continue;
    }
    const ConicalFace& t = phi.target.faces.at(fm->second);
    if (t.rank != f.rank) {
      flag("dimension", id + " -> " + fm->second);
      continue;
    }
    auto lm = phi.lattice_maps.find(id);
    if (lm == phi.lattice_maps.end() || lm->second.rows != t.rank || lm->second.cols != f.rank) {
      flag("missing-face", id + ": no lattice map");
      continue;
    }
    const IntMat& L = lm->second;
    if (int_rank(L) != f.rank) {
      flag("not-injective", id);
      continue;
    }
    IVec pulled(f.rank, Int(0));
    for (int j = 0; j < f.rank; ++j)
      for (int k = 0; k < t.rank; ++k) pulled[j] += t.varpi[k] * L.at(k, j);
    bool src_zero = std::all_of(f.varpi.begin(), f.varpi.end(), [](const Int& x) { return x == 0; });
    bool pull_zero = std::all_of(pulled.begin(), pulled.end(), [](const Int& x) { return x == 0; });
    if (src_zero != pull_zero) {
      flag("varpi", id);
    } else if (!src_zero) {
      int j0 = 0;
      while (f.varpi[j0] == 0) ++j0;
      Int q = pulled[j0] / f.varpi[j0];
      bool proportional = q > 0 && pulled[j0] == q * f.varpi[j0];
      for (int j = 0; proportional && j < f.rank; ++j)
        if (pulled[j] != q * f.varpi[j]) proportional = false;
      if (!proportional)
        flag("varpi", id);
      else if (ram && *ram != q)
        flag("varpi", id + ": covector scale " + q.str() + " != " + ram->str());
      else
        ram = q;
    }
    std::vector<IVec> img;
    for (const IVec& r : f.rays) img.push_back(primitive(L.apply(r)));
    bool onto = canonical_rays(cone_geometry(img, t.rank)) == canonical_rays(tgeom.at(fm->second));
    if (!onto) flag("image-cone", id + ": cone does not map onto the target cone");
  }
  if (!rep.ok()) return rep;

  for (const Embedding& e : phi.source.embeddings) {
    try {
      matched_instance(phi, e);
    } catch (const ZplError&) {
      flag("embedding-square", e.sub + " -> " + e.super);
    }
  }
  std::set<std::string> hit;
  for (const auto& [sid, tid] : phi.face_map) hit.insert(tid);
  for (const auto& [id, f] : phi.target.faces)
    if (!hit.count(id)) flag("not-surjective", id + " has no preimage");
  return rep;
}

Int local_degree(const ComplexCover& phi, const std::string& source_ridge) {
  const std::string tau = phi.face_map.at(source_ridge);
  std::vector<FacetRidgePair> tpairs, spairs;
  for (const FacetRidgePair& p : facet_ridge_pairs(phi.target))
    if (p.ridge == tau) tpairs.push_back(p);
  for (const FacetRidgePair& p : facet_ridge_pairs(phi.source))
    if (p.ridge == source_ridge) spairs.push_back(p);
  if (tpairs.empty()) throw ZplError("not-facet-ridge", tau + " is not a ridge");

  std::map<int, Int> sums;  // target embedding instance -> Σ indices
  for (const FacetRidgePair& tp : tpairs) sums[tp.embedding] = 0;
  for (const FacetRidgePair& sp : spairs) {
    int ti = matched_instance(phi, phi.source.embeddings[sp.embedding]);
    sums.at(ti) += map_index(phi.lattice_maps.at(sp.facet));
  }
  Int common = sums.begin()->second;
  for (const auto& [ti, v] : sums)
    if (v != common) {
      std::string detail = "ridge " + source_ridge + ":";
      for (const auto& [t2, v2] : sums)
        detail += " " + phi.target.embeddings[t2].super + "=" + v2.str();
      throw ZplError("unbalanced-at-ridge", detail);
    }
  if (common <= 0)
    throw ZplError("unbalanced-at-ridge", "ridge " + source_ridge + " has no facets over some instance");
  return common;
}

BalanceReport balance_report(const ComplexCover& phi) {
  BalanceReport rep;
  int maxrank = 0;
  for (const auto& [id, f] : phi.target.faces) maxrank = std::max(maxrank, f.rank);
  std::vector<std::string> source_ridges;
  for (const auto& [id, f] : phi.source.faces)
    if (f.rank == maxrank - 1) source_ridges.push_back(id);
  for (const std::string& r : source_ridges) {
    try {
      rep.local_degrees[r] = local_degree(phi, r);
    } catch (const ZplError& e) {
      rep.balanced = false;
      rep.unbalanced_ridges.push_back(r);
      rep.failures[r] = e.what();
    }
  }
  if (!rep.balanced) return rep;

  auto components = connected_components(phi.target);
  std::map<std::string, int> comp_of;
  for (size_t i = 0; i < components.size(); ++i)
    for (const std::string& id : components[i]) comp_of[id] = int(i);
  std::map<int, std::optional<Int>> comp_degree;
  for (const auto& [id, f] : phi.target.faces) {
    if (f.rank != maxrank - 1) continue;
    Int total = 0;
    for (const std::string& r : source_ridges)
      if (phi.face_map.at(r) == id) total += rep.local_degrees.at(r);
    auto& slot = comp_degree[comp_of.at(id)];
    if (!slot)
      slot = total;
    else if (*slot != total)
      rep.degree_consistent = false;
  }
  if (rep.degree_consistent && components.size() == 1 && !comp_degree.empty())
    rep.degree = comp_degree.begin()->second;
  return rep;
}

CombinatorialDivisor pullback_cycle(const ComplexCover& phi, const CombinatorialDivisor& w) {
  BalanceReport b = balance_report(phi);
  if (!b.balanced) throw ZplError("unbalanced", "cover is not balanced");
  CombinatorialDivisor out;
  for (const auto& [ridge, deg] : b.local_degrees) {
    auto it = w.coefficients.find(phi.face_map.at(ridge));
    if (it == w.coefficients.end() || it->second == 0) continue;
    out.coefficients[ridge] = Rat(deg) * it->second;
  }
  return out;
}

PLFunction pullback_function(const ComplexCover& phi, const PLFunction& f) {
  PLFunction out;
  for (const auto& [id, face] : phi.source.faces) {
    const QVec& tf = f.covectors.at(phi.face_map.at(id));
    const IntMat& L = phi.lattice_maps.at(id);
    QVec g(face.rank, Rat(0));
    for (int j = 0; j < face.rank; ++j)
      for (int k = 0; k < L.rows; ++k) g[j] += tf[k] * Rat(L.at(k, j));
    out.covectors[id] = std::move(g);
  }
  return out;
}

ComplexCover dilation_cover(const PLComplex& c, const Int& e) {
  if (e <= 0) throw ZplError("bad-argument", "dilation index must be positive");
  if (complex_is_conical(c)) throw ZplError("no-varpi", "complex has no covector data");
  ComplexCover phi;
  phi.target = c;
  std::map<std::string, IntMat> incl;
  for (const auto& [id, f] : c.faces) {
    // basis of {n : <varpi, n> in eZ} as matrix columns
    IntMat w(1, f.rank);
    for (int j = 0; j < f.rank; ++j) w.at(0, j) = f.varpi[j];
    SNF s = smith_normal_form(w);
    Int rho = s.invariants.empty() ? Int(0) : s.invariants[0];
    Int k = rho == 0 ? Int(1) : e / gcd(e, rho);
    IntMat b(f.rank, f.rank);
    for (int i = 0; i < f.rank; ++i)
      for (int j = 0; j < f.rank; ++j) b.at(i, j) = s.right.at(i, j) * (j == 0 ? k : Int(1));
    incl.emplace(id, b);

    ConicalFace nf;
    nf.rank = f.rank;
    for (size_t r = 0; r < f.rays.size(); ++r) {
      Int m = dot(f.varpi, f.rays[r]);
      Int t = m == 0 ? Int(1) : e / gcd(e, m);
      IVec scaled(f.rank);
      for (int j = 0; j < f.rank; ++j) scaled[j] = t * f.rays[r][j];
      nf.rays.push_back(to_i(*solve_rational(b, to_q(scaled))));
    }
    nf.varpi.resize(f.rank);
    for (int j = 0; j < f.rank; ++j) {
      Int v = 0;
      for (int i = 0; i < f.rank; ++i) v += f.varpi[i] * b.at(i, j);
      nf.varpi[j] = v / e;
    }
    nf.vertical = f.vertical;
    nf.genus = f.genus;
    nf.residue_degree = f.residue_degree;
    phi.source.faces[id] = std::move(nf);
    phi.face_map[id] = id;
    phi.lattice_maps[id] = incl.at(id);
  }
  for (const Embedding& te : c.embeddings) {
    IntMat m = solve_through(incl.at(te.super), te.matrix.mul(incl.at(te.sub)));
    phi.source.embeddings.push_back({te.sub, te.super, m});
  }
  return phi;
}

Report multiplicity_chain_check(const ComplexCover& phi) {
  Report rep;
  for (const auto& [tau, f] : phi.source.faces) {
    const std::string& y = phi.face_map.at(tau);
    Int rhs = map_index(phi.lattice_maps.at(tau)) * f.residue_degree;
    for (size_t i = 0; i < phi.target.embeddings.size(); ++i) {
      const Embedding& te = phi.target.embeddings[i];
      if (te.sub != y) continue;
      if (phi.target.faces.at(te.super).rank != f.rank + 1) continue;
      Int lhs = 0;
      for (const Embedding& se : phi.source.embeddings) {
        if (se.sub != tau) continue;
        if (matched_instance(phi, se) != int(i)) continue;
        lhs += map_index(phi.lattice_maps.at(se.super)) * phi.source.faces.at(se.super).residue_degree;
      }
      if (lhs != rhs)
        rep.violations.push_back(
            {"chain", tau + " over instance " + te.sub + " -> " + te.super + ": " + lhs.str() +
                          " != " + rhs.str()});
    }
  }
  return rep;
}

PullbackSubdivision pullback_subdivision(const ComplexCover& phi, const ComplexMap& s) {
  for (const auto& [id, f] : s.target.faces)
    if (!phi.target.faces.count(id))
      throw ZplError("incompatible-subdivision", "subdivision is not of the cover target");

  // target pieces per original face: (piece id, cone geometry in target coords)
  std::map<std::string, std::vector<std::pair<std::string, ConeGeom>>> pieces;
  std::map<std::string, ConeGeom> piece_geom;
  for (const auto& [gid, gf] : s.source.faces) {
    const std::string& tid = s.face_map.at(gid);
    std::vector<IVec> img;
    for (const IVec& r : gf.rays) img.push_back(primitive(s.lattice_maps.at(gid).apply(r)));
    ConeGeom g = cone_geometry(img, s.target.faces.at(tid).rank);
    piece_geom.emplace(gid, g);
    if (gf.rank == s.target.faces.at(tid).rank) pieces[tid].push_back({gid, std::move(g)});
  }

  std::map<std::string, LocalFan> fans;
  for (const auto& [sid, sf] : phi.source.faces) {
    const std::string& tid = phi.face_map.at(sid);
    const IntMat& L = phi.lattice_maps.at(sid);
    ConeGeom sg = cone_geometry(sf.rays, sf.rank);
    LocalFan fan;
    auto it = pieces.find(tid);
    if (it == pieces.end()) continue;
    for (const auto& [gid, pgeom] : it->second) {
      std::vector<IVec> cons;
      for (const IVec& h : pgeom.facets_local) {
        IVec pulled(sf.rank, Int(0));
        for (int j = 0; j < sf.rank; ++j)
          for (int k = 0; k < L.rows; ++k) pulled[j] += h[k] * L.at(k, j);
        cons.push_back(std::move(pulled));
      }
      cons.insert(cons.end(), sg.facets_local.begin(), sg.facets_local.end());
      std::vector<IVec> rays = rays_from_facets(cons, sf.rank);
      if (rays.empty()) continue;
      if (cone_geometry(rays, sf.rank).dim() != sf.rank) continue;
      fan.top_cones.push_back(std::move(rays));
    }
    fans[sid] = std::move(fan);
  }

  PullbackSubdivision out;
  out.subdivision = assemble_subdivision(phi.source, fans);
  out.lifted.source = out.subdivision.source;
  out.lifted.target = s.source;
  for (const auto& [fid, ff] : out.subdivision.source.faces) {
    const std::string& sid = out.subdivision.face_map.at(fid);
    const std::string& tid = phi.face_map.at(sid);
    IntMat to_target = phi.lattice_maps.at(sid).mul(out.subdivision.lattice_maps.at(fid));
    // minimal-rank subdivision cone of the target containing the image
    std::string best;
    int best_rank = -1;
    for (const auto& [gid, gf] : s.source.faces) {
      if (s.face_map.at(gid) != tid) continue;
      bool inside = true;
      for (const IVec& r : ff.rays)
        if (!cone_contains(piece_geom.at(gid), to_target.apply(r))) inside = false;
      if (!inside) continue;
      if (best_rank < 0 || gf.rank < best_rank) {
        best = gid;
        best_rank = gf.rank;
      }
    }
    if (best_rank != ff.rank)
      throw ZplError("incompatible-subdivision", "no matching piece for " + fid);
    out.lifted.face_map[fid] = best;
    out.lifted.lattice_maps[fid] = solve_through(s.lattice_maps.at(best), to_target);
  }
  return out;
}

}  // namespace zpl
