#include "zpl/fan.hpp"

#include <algorithm>
#include <map>

namespace zpl {

namespace {

[[noreturn]] void bad(const std::string& detail) { throw ZplError("inconsistent-fan", detail); }

bool is_surjective(const IntMat& q) {
  SNF s = smith_normal_form(q);
  if (int(s.invariants.size()) != q.rows) return false;
  for (const Int& d : s.invariants)
    if (d != 1) return false;
  return true;
}

}  // namespace

PLComplex dual_complex_from_fan(const KatoFan& fan) {
  std::map<std::string, const MarkedFanPoint*> by_label;
  for (const MarkedFanPoint& p : fan.points)
    if (!by_label.emplace(p.label, &p).second) bad("duplicate point label " + p.label);

  std::map<std::string, ConeGeom> geom;
  for (const MarkedFanPoint& p : fan.points) {
    int n = p.monoid.ambient;
    if (!monoid_is_sharp(p.monoid)) bad("point " + p.label + ": monoid is not sharp");
    if (int(p.varpi.size()) != n) bad("point " + p.label + ": varpi dimension mismatch");
    ConeGeom g = cone_geometry(p.monoid.generators, n);
    if (!(Lattice::from_generators(n, p.monoid.generators) == Lattice::full(n)))
      bad("point " + p.label + ": monoid does not generate the group");
    if (!monoid_contains(p.monoid, p.varpi))
      bad("point " + p.label + ": varpi is not a monoid element");
    geom.emplace(p.label, std::move(g));
  }

  for (const MarkedFanPoint& p : fan.points)
    for (const Cospecialization& c : p.cospecs) {
      auto it = by_label.find(c.target);
      if (it == by_label.end()) bad("cospecialization from " + p.label + " to unknown point");
      const MarkedFanPoint& t = *it->second;
      if (t.label == p.label) bad("cospecialization from " + p.label + " to itself");
      if (c.matrix.rows != t.monoid.ambient || c.matrix.cols != p.monoid.ambient)
        bad("cospecialization " + p.label + " -> " + t.label + ": wrong shape");
      if (!is_surjective(c.matrix))
        bad("cospecialization " + p.label + " -> " + t.label + ": not surjective");
      // kernel must be the span of a face of the source cone
      Lattice ker = kernel_saturation(c.matrix);
      const ConeGeom& g = geom.at(p.label);
      bool face_kernel = false;
      for (const auto& fs : cone_faces(g)) {
        std::vector<IVec> face_rays;
        for (int k : fs) face_rays.push_back(g.rays[k]);
        if (Lattice::from_generators(p.monoid.ambient, face_rays) == ker) {
          face_kernel = true;
          break;
        }
      }
      if (!face_kernel)
        bad("cospecialization " + p.label + " -> " + t.label + ": kernel is not a face span");
      if (c.matrix.apply(p.varpi) != t.varpi)
        bad("cospecialization " + p.label + " -> " + t.label + ": varpi not preserved");
    }

  // commutation: every composite of declared quotients must itself be declared
  for (const MarkedFanPoint& p : fan.points)
    for (const Cospecialization& c1 : p.cospecs) {
      const MarkedFanPoint& mid = *by_label.at(c1.target);
      for (const Cospecialization& c2 : mid.cospecs) {
        IntMat comp = c2.matrix.mul(c1.matrix);
        bool declared = false;
        for (const Cospecialization& c : p.cospecs)
          if (c.target == c2.target && c.matrix == comp) declared = true;
        if (!declared)
          bad("cospecializations " + p.label + " -> " + mid.label + " -> " + c2.target +
              " do not commute with a declared quotient");
      }
    }

  PLComplex out;
  for (const MarkedFanPoint& p : fan.points) {
    if (is_zero(p.varpi)) continue;  // empty slice
    ConicalFace f;
    f.rank = p.monoid.ambient;
    f.rays = dual_cone_rays(geom.at(p.label).rays, p.monoid.ambient);
    f.varpi = p.varpi;
    out.faces[p.label] = std::move(f);
  }
  for (const MarkedFanPoint& p : fan.points) {
    if (is_zero(p.varpi)) continue;
    for (const Cospecialization& c : p.cospecs) {
      if (!out.faces.count(c.target)) continue;
      out.embeddings.push_back({c.target, p.label, c.matrix.transpose()});
    }
  }
  std::sort(out.embeddings.begin(), out.embeddings.end(), [](const Embedding& a, const Embedding& b) {
    return std::tie(a.sub, a.super, a.matrix.a) < std::tie(b.sub, b.super, b.matrix.a);
  });
  return out;
}

}  // namespace zpl
