#include "zpl/tropical.hpp"

#include <algorithm>

#include "zpl/measure.hpp"

namespace zpl {

namespace {

const QVec& cov(const PLComplex& c, const PLFunction& f, const std::string& id) {
  auto it = f.covectors.find(id);
  if (it == f.covectors.end()) throw ZplError("function-missing-face", id);
  if (int(it->second.size()) != face_of(c, id).rank) throw ZplError("function-size", id);
  return it->second;
}

Int lat_index(const IntMat& m) {
  SNF s = smith_normal_form(m);
  if (int(s.invariants.size()) != m.cols) throw ZplError("invalid-cover", "lattice map not injective");
  Int prod = 1;
  for (const Int& d : s.invariants) prod *= d;
  return prod;
}

struct TropCache {
  int maxrank = 0;
  std::vector<FacetRidgePair> pairs;
  std::map<std::string, FaceReport> rep;                // facets and ridges
  std::map<std::string, Rat> mult_b, mult_u;
  std::map<std::string, std::vector<size_t>> by_ridge;  // pair indices
  std::vector<std::string> ridges;                      // sorted
};

TropCache build_cache(const PLComplex& base) {
  TropCache c;
  for (const auto& [id, f] : base.faces) c.maxrank = std::max(c.maxrank, f.rank);
  c.pairs = facet_ridge_pairs(base);
  for (const auto& [id, f] : base.faces) {
    if (f.rank < c.maxrank - 1) continue;
    FaceReport r = analyze_face(f);
    if (!r.det) throw ZplError("non-simplicial", id);
    if (f.rank == c.maxrank - 1) {
      c.mult_b[id] = Rat(0);
      c.mult_u[id] = Rat(0);
      c.ridges.push_back(id);
    }
    c.rep.emplace(id, std::move(r));
  }
  for (size_t i = 0; i < c.pairs.size(); ++i) {
    const FacetRidgePair& p = c.pairs[i];
    if (!p.extra_ray) throw ZplError("non-simplicial", p.facet);
    Rat dr = Rat(*c.rep.at(p.ridge).det) / Rat(*c.rep.at(p.facet).det);
    if (p.extra_is_vertex)
      c.mult_b.at(p.ridge) += Rat(c.rep.at(p.facet).mults[*p.extra_ray]) * dr;
    else
      c.mult_u.at(p.ridge) += dr;
    c.by_ridge[p.ridge].push_back(i);
  }
  return c;
}

Rat det_ratio(const TropCache& c, const FacetRidgePair& p) {
  return Rat(*c.rep.at(p.ridge).det) / Rat(*c.rep.at(p.facet).det);
}

SlopeValue slope_instance(const TropicalComplex& t, const PLFunction& f, const TropCache& c,
                          const FacetRidgePair& p) {
  const ConicalFace& fac = t.base.faces.at(p.facet);
  const ConicalFace& rid = t.base.faces.at(p.ridge);
  const Embedding& e = t.base.embeddings[p.embedding];
  const QVec& fs = cov(t.base, f, p.facet);
  int r = *p.extra_ray;
  Rat vol = simplicial_face_volume(fac);
  SlopeValue out{p.facet, p.ridge, Rat(0), p.extra_is_vertex};
  if (p.extra_is_vertex) {
    Rat corr(0);
    for (int i : c.rep.at(p.ridge).vertex_rays)
      corr += alpha_at(t, p.ridge, i) * dotQ(e.matrix.apply(rid.rays[i]), fs);
    Int mr = c.rep.at(p.facet).mults[r];
    out.value = (dotQ(fac.rays[r], fs) / Rat(mr) - corr / c.mult_b.at(p.ridge)) / vol;
  } else {
    Rat corr(0);
    for (int i : c.rep.at(p.ridge).recession_rays)
      corr += alpha_at(t, p.ridge, i) * dotQ(e.matrix.apply(rid.rays[i]), fs);
    const Rat& mu = c.mult_u.at(p.ridge);
    if (mu == 0) {
      if (corr != 0) throw ZplError("degenerate-mult-u", p.ridge);
      out.value = dotQ(fac.rays[r], fs) / vol;
    } else {
      out.value = (dotQ(fac.rays[r], fs) - corr / mu) / vol;
    }
  }
  return out;
}

void check_function(const PLComplex& c, const PLFunction& f) {
  Report r = validate_function(c, f);
  if (!r.ok())
    throw ZplError("invalid-function", r.violations.front().code + ": " + r.violations.front().detail);
}

// specialization numerator: the intersection number of the divisor of f with
// the ridge stratum, before dividing by vol(tau^-)
Rat sp_numerator(const TropicalComplex& t, const PLFunction& f, const TropCache& c,
                 const std::string& rid) {
  Rat num(0);
  auto it = c.by_ridge.find(rid);
  if (it != c.by_ridge.end())
    for (size_t i : it->second) {
      const FacetRidgePair& p = c.pairs[i];
      const ConicalFace& fac = t.base.faces.at(p.facet);
      num += dotQ(fac.rays[*p.extra_ray], cov(t.base, f, p.facet)) * det_ratio(c, p);
    }
  const ConicalFace& rf = t.base.faces.at(rid);
  const QVec& ft = cov(t.base, f, rid);
  for (size_t i = 0; i < rf.rays.size(); ++i) num -= dotQ(rf.rays[i], ft) * alpha_at(t, rid, int(i));
  return num;
}

}  // namespace

Rat alpha_at(const TropicalComplex& t, const std::string& ridge, int ray) {
  auto it = t.alpha.find({ridge, ray});
  return it == t.alpha.end() ? Rat(0) : it->second;
}

Rat intersection_number(const TropicalComplex& t, const std::string& ridge,
                        const std::string& facet) {
  TropCache c = build_cache(t.base);
  for (const FacetRidgePair& p : c.pairs) {
    if (p.ridge != ridge || p.facet != facet) continue;
    const Embedding& e = t.base.embeddings[p.embedding];
    std::vector<IVec> cols;
    for (int j = 0; j < e.matrix.cols; ++j) cols.push_back(e.matrix.col(j));
    cols.push_back(t.base.faces.at(facet).rays[*p.extra_ray]);
    Int idx = lat_index(IntMat::from_cols(cols, e.matrix.rows));
    if (idx * *c.rep.at(ridge).det != *c.rep.at(facet).det)
      throw ZplError("internal", "index and determinant ratio disagree at " + ridge);
    return det_ratio(c, p);
  }
  throw ZplError("not-adjacent", facet + " does not cover " + ridge);
}

TropicalReport validate_tropical(const TropicalComplex& t) {
  TropicalReport out;
  out.report = validate_complex(t.base);
  if (!out.report.ok()) return out;
  auto flag = [&](const std::string& code, const std::string& detail) {
    out.report.violations.push_back({code, detail});
  };
  if (complex_is_conical(t.base)) {
    flag("no-varpi", "tropical structure needs a sliced complex");
    return out;
  }
  if (!complex_is_simplicial(t.base)) {
    flag("non-simplicial", "tropical structure needs a simplicial complex");
    return out;
  }
  TropCache c;
  try {
    c = build_cache(t.base);
  } catch (const ZplError& e) {
    flag(e.code(), e.what());
    return out;
  }
  for (const auto& [key, val] : t.alpha) {
    auto it = t.base.faces.find(key.first);
    if (it == t.base.faces.end() || it->second.rank != c.maxrank - 1 || key.second < 0 ||
        key.second >= int(it->second.rays.size()))
      flag("alpha-key", key.first + "#" + std::to_string(key.second));
  }
  for (const std::string& rid : c.ridges) {
    const FaceReport& r = c.rep.at(rid);
    Rat lhs(0);
    for (int i : r.vertex_rays) lhs += Rat(r.mults[i]) * alpha_at(t, rid, i);
    if (lhs != c.mult_b.at(rid))
      flag("alpha-constraint",
           rid + ": " + rat_str(lhs) + " != mult_b = " + rat_str(c.mult_b.at(rid)));
    if (c.mult_u.at(rid) == 0) {
      bool nonzero = false;
      for (int i : r.recession_rays)
        if (alpha_at(t, rid, i) != 0) nonzero = true;
      if (nonzero) out.degenerate_ridges.push_back(rid);
    }
  }
  out.mult_b = c.mult_b;
  out.mult_u = c.mult_u;
  return out;
}

SlopeValue slope(const TropicalComplex& t, const PLFunction& f, const std::string& facet,
                 const std::string& ridge) {
  TropCache c = build_cache(t.base);
  std::vector<SlopeValue> vals;
  for (const FacetRidgePair& p : c.pairs)
    if (p.facet == facet && p.ridge == ridge) vals.push_back(slope_instance(t, f, c, p));
  if (vals.empty()) throw ZplError("not-adjacent", facet + " does not cover " + ridge);
  for (const SlopeValue& v : vals)
    if (v.value != vals.front().value)
      throw ZplError("ambiguous-instance", facet + " covers " + ridge + " with distinct slopes");
  return vals.front();
}

CombinatorialDivisor laplacian(const TropicalComplex& t, const PLFunction& f) {
  check_function(t.base, f);
  TropCache c = build_cache(t.base);
  CombinatorialDivisor out;
  for (const std::string& rid : c.ridges) {
    if (!t.base.faces.at(rid).vertical) continue;
    Rat sum(0);
    for (size_t i : c.by_ridge[rid]) sum += slope_instance(t, f, c, c.pairs[i]).value;
    out.coefficients[rid] = sum;
  }
  return out;
}

CombinatorialDivisor specialize(const TropicalComplex& t, const PLFunction& f) {
  check_function(t.base, f);
  TropCache c = build_cache(t.base);
  CombinatorialDivisor out;
  for (const std::string& rid : c.ridges) {
    if (!t.base.faces.at(rid).vertical) continue;
    out.coefficients[rid] =
        sp_numerator(t, f, c, rid) / simplicial_face_volume(t.base.faces.at(rid));
  }
  return out;
}

std::map<std::string, Rat> weil_cycle(const TropicalComplex& t, const PLFunction& f) {
  check_function(t.base, f);
  RayClasses rc = ray_classes(t.base);
  std::map<int, Rat> by_class;
  for (const auto& [key, cl] : rc.cls) {
    Rat v = dotQ(t.base.faces.at(key.first).rays[key.second], cov(t.base, f, key.first));
    auto it = by_class.find(cl);
    if (it == by_class.end())
      by_class.emplace(cl, v);
    else if (it->second != v)
      throw ZplError("invalid-function", "incompatible values on identified rays");
  }
  std::map<std::string, Rat> out;
  for (const auto& [cl, v] : by_class) {
    const std::string& label = rc.labels[cl];
    // classes named by a rank-1 face: cross-check against that face's own data
    auto it = t.base.faces.find(label);
    if (it != t.base.faces.end() && it->second.rank == 1) {
      Rat own = dotQ(it->second.rays[0], cov(t.base, f, label));
      if (own != v) throw ZplError("invalid-function", "vertex value mismatch at " + label);
    }
    out[label] = v;
  }
  return out;
}

std::string convexity_name(Convexity c) {
  switch (c) {
    case Convexity::harmonic: return "harmonic";
    case Convexity::convex: return "convex";
    case Convexity::strongly_convex: return "strongly-convex";
    default: return "none";
  }
}

Convexity classify_function(const TropicalComplex& t, const PLFunction& f) {
  check_function(t.base, f);
  TropCache c = build_cache(t.base);
  bool all_zero = true, all_nonneg = true, all_pos = true, any = false;
  for (const std::string& rid : c.ridges) {
    if (!t.base.faces.at(rid).vertical) continue;
    any = true;
    Rat num = sp_numerator(t, f, c, rid);
    if (num != 0) all_zero = false;
    if (num < 0) all_nonneg = false;
    if (num <= 0) all_pos = false;
  }
  if (!any || all_zero) return Convexity::harmonic;
  if (all_pos) return Convexity::strongly_convex;
  if (all_nonneg) return Convexity::convex;
  return Convexity::none;
}

LaplacianSplit laplacian_split(const TropicalComplex& t, const PLFunction& f) {
  check_function(t.base, f);
  TropCache c = build_cache(t.base);
  LaplacianSplit out;
  for (const std::string& rid : c.ridges) {
    if (!t.base.faces.at(rid).vertical) continue;
    Rat bounded(0), unbounded(0);
    for (size_t i : c.by_ridge[rid]) {
      const FacetRidgePair& p = c.pairs[i];
      Rat v = slope_instance(t, f, c, p).value;
      if (c.rep.at(p.facet).recession_rays.empty())
        bounded += v;
      else
        unbounded += v;
    }
    out.bounded.coefficients[rid] = bounded;
    out.unbounded.coefficients[rid] = unbounded;
  }
  return out;
}

CombinatorialDivisor canonical_divisor(const TropicalComplex& t) {
  TropCache c = build_cache(t.base);
  CombinatorialDivisor out;
  for (const std::string& rid : c.ridges) {
    const ConicalFace& rf = t.base.faces.at(rid);
    if (!rf.vertical) continue;
    if (!rf.genus) throw ZplError("missing-genus", rid);
    Int chi = Int(2) - Int(2) * *rf.genus - Int((long)c.by_ridge[rid].size());
    out.coefficients[rid] = -Rat(chi) / simplicial_face_volume(rf);
  }
  return out;
}

CombinatorialDivisor relative_canonical(const ComplexCover& phi) {
  BalanceReport b = balance_report(phi);
  if (!b.balanced) throw ZplError("unbalanced", "cover is not balanced");
  TropCache cs = build_cache(phi.source);
  TropCache ct = build_cache(phi.target);
  CombinatorialDivisor out;
  for (const std::string& rid : cs.ridges) {
    const ConicalFace& sf = phi.source.faces.at(rid);
    if (!sf.vertical) continue;
    const std::string& tid = phi.face_map.at(rid);
    const ConicalFace& tf = phi.target.faces.at(tid);
    if (!sf.genus) throw ZplError("missing-genus", rid);
    if (!tf.vertical || !tf.genus) throw ZplError("missing-genus", tid);
    Int chi_s = Int(2) - Int(2) * *sf.genus - Int((long)cs.by_ridge[rid].size());
    Int chi_t = Int(2) - Int(2) * *tf.genus - Int((long)ct.by_ridge[tid].size());
    Rat ee = Rat(b.local_degrees.at(rid)) / Rat(lat_index(phi.lattice_maps.at(rid)));
    out.coefficients[rid] = -(Rat(chi_s) - ee * Rat(chi_t)) / simplicial_face_volume(sf);
  }
  return out;
}

AlphaMap pullback_alpha(const ComplexCover& phi, const TropicalComplex& target) {
  BalanceReport b = balance_report(phi);
  if (!b.balanced) throw ZplError("unbalanced", "cover is not balanced");
  TropCache cs = build_cache(phi.source);
  AlphaMap out;
  for (const std::string& rid : cs.ridges) {
    const std::string& tid = phi.face_map.at(rid);
    const IntMat& L = phi.lattice_maps.at(rid);
    const ConicalFace& sf = phi.source.faces.at(rid);
    const ConicalFace& tf = phi.target.faces.at(tid);
    Rat ee = Rat(b.local_degrees.at(rid)) / Rat(lat_index(L));
    for (size_t i = 0; i < sf.rays.size(); ++i) {
      IVec img = primitive(L.apply(sf.rays[i]));
      int j = -1;
      for (size_t k = 0; k < tf.rays.size(); ++k)
        if (tf.rays[k] == img) j = int(k);
      if (j < 0) throw ZplError("invalid-cover", "ray image is not a target ray at " + rid);
      Rat a = ee * alpha_at(target, tid, j);
      if (a != 0) out[{rid, int(i)}] = a;
    }
  }
  return out;
}

TropicalComplex pullback_tropical(const ComplexCover& phi, const TropicalComplex& target) {
  return {phi.source, pullback_alpha(phi, target)};
}

CombinatorialDivisor pullback_density(const ComplexCover& phi, const CombinatorialDivisor& w) {
  BalanceReport b = balance_report(phi);
  if (!b.balanced) throw ZplError("unbalanced", "cover is not balanced");
  CombinatorialDivisor out;
  for (const auto& [rid, deg] : b.local_degrees) {
    const std::string& tid = phi.face_map.at(rid);
    auto it = w.coefficients.find(tid);
    if (it == w.coefficients.end() || it->second == 0) continue;
    Rat ee = Rat(deg) / Rat(lat_index(phi.lattice_maps.at(rid)));
    Rat ratio = simplicial_face_volume(phi.target.faces.at(tid)) /
                simplicial_face_volume(phi.source.faces.at(rid));
    out.coefficients[rid] = ee * ratio * it->second;
  }
  return out;
}

CombinatorialDivisor divisor_sub(const CombinatorialDivisor& a, const CombinatorialDivisor& b) {
  CombinatorialDivisor out;
  for (const auto& [id, v] : a.coefficients) {
    auto it = b.coefficients.find(id);
    Rat d = it == b.coefficients.end() ? v : v - it->second;
    if (d != 0) out.coefficients[id] = d;
  }
  for (const auto& [id, v] : b.coefficients)
    if (!a.coefficients.count(id) && v != 0) out.coefficients[id] = -v;
  return out;
}

bool divisor_eq(const CombinatorialDivisor& a, const CombinatorialDivisor& b) {
  return divisor_sub(a, b).coefficients.empty();
}

RHReport rh_check(const TropicalComplex& source, const ComplexCover& phi, const PLFunction& delta) {
  RHReport out;
  for (const auto& [id, face] : phi.source.faces) {
    const QVec& d = cov(phi.source, delta, id);
    for (const IVec& r : face.rays)
      if (dotQ(r, d) < 0) {
        out.negative_faces.push_back(id);
        break;
      }
  }
  out.different_laplacian = laplacian(source, delta);
  out.relative_canonical_divisor = relative_canonical(phi);
  out.residuals = divisor_sub(out.different_laplacian, out.relative_canonical_divisor);
  out.ok = out.residuals.coefficients.empty() && out.negative_faces.empty();
  return out;
}

}  // namespace zpl
