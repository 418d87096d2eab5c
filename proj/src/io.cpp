#include "zpl/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace zpl {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& why) {
  throw ZplError("schema-error", path + ": " + why);
}

const json& field(const json& j, const std::string& path, const char* name) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) bad(path + "." + name, "missing");
  return *it;
}

std::string parse_str(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

Int parse_int_field(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (...) {
      bad(path, "not an integer");
    }
  }
  bad(path, "expected an integer");
}

Rat parse_rat_field(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
  if (j.is_number_unsigned()) return Rat(Int(j.get<unsigned long long>()));
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (...) {
      bad(path, "not a rational");
    }
  }
  bad(path, "expected a rational \"p/q\" string");
}

IVec parse_ivec(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  IVec v;
  for (size_t i = 0; i < j.size(); ++i)
    v.push_back(parse_int_field(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

QVec parse_qvec(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  QVec v;
  for (size_t i = 0; i < j.size(); ++i)
    v.push_back(parse_rat_field(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

IntMat parse_matrix(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of rows");
  std::vector<IVec> rows;
  for (size_t i = 0; i < j.size(); ++i) {
    rows.push_back(parse_ivec(j[i], path + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != rows.front().size()) bad(path, "ragged rows");
  }
  int cols = rows.empty() ? 0 : int(rows.front().size());
  return IntMat::from_rows(rows, cols);
}

PLComplex parse_complex_payload(const json& j, const std::string& path) {
  PLComplex c;
  const json& faces = field(j, path, "faces");
  if (!faces.is_array()) bad(path + ".faces", "expected an array");
  for (size_t i = 0; i < faces.size(); ++i) {
    const std::string p = path + ".faces[" + std::to_string(i) + "]";
    const json& jf = faces[i];
    std::string id = parse_str(field(jf, p, "id"), p + ".id");
    if (c.faces.count(id)) bad(p + ".id", "duplicate face id " + id);
    ConicalFace f;
    Int rk = parse_int_field(field(jf, p, "rank"), p + ".rank");
    if (rk < 0 || rk > 64) bad(p + ".rank", "out of range");
    f.rank = int(rk.convert_to<long>());
    const json& rays = field(jf, p, "rays");
    if (!rays.is_array()) bad(p + ".rays", "expected an array");
    for (size_t r = 0; r < rays.size(); ++r)
      f.rays.push_back(parse_ivec(rays[r], p + ".rays[" + std::to_string(r) + "]"));
    f.varpi = parse_ivec(field(jf, p, "varpi"), p + ".varpi");
    if (jf.contains("vertical")) {
      if (!jf["vertical"].is_boolean()) bad(p + ".vertical", "expected a boolean");
      f.vertical = jf["vertical"].get<bool>();
    }
    if (jf.contains("genus")) f.genus = parse_int_field(jf["genus"], p + ".genus");
    if (jf.contains("residue_degree"))
      f.residue_degree = parse_int_field(jf["residue_degree"], p + ".residue_degree");
    c.faces.emplace(std::move(id), std::move(f));
  }
  const json& embs = field(j, path, "embeddings");
  if (!embs.is_array()) bad(path + ".embeddings", "expected an array");
  for (size_t i = 0; i < embs.size(); ++i) {
    const std::string p = path + ".embeddings[" + std::to_string(i) + "]";
    const json& je = embs[i];
    Embedding e;
    e.sub = parse_str(field(je, p, "sub"), p + ".sub");
    e.super = parse_str(field(je, p, "super"), p + ".super");
    e.matrix = parse_matrix(field(je, p, "matrix"), p + ".matrix");
    c.embeddings.push_back(std::move(e));
  }
  return c;
}

ComplexCover parse_cover_payload(const json& j, const std::string& path) {
  ComplexCover phi;
  phi.source = parse_complex_payload(field(j, path, "source"), path + ".source");
  phi.target = parse_complex_payload(field(j, path, "target"), path + ".target");
  const json& fm = field(j, path, "face_map");
  if (!fm.is_object()) bad(path + ".face_map", "expected an object");
  for (auto it = fm.begin(); it != fm.end(); ++it)
    phi.face_map[it.key()] = parse_str(it.value(), path + ".face_map." + it.key());
  const json& lm = field(j, path, "lattice_maps");
  if (!lm.is_object()) bad(path + ".lattice_maps", "expected an object");
  for (auto it = lm.begin(); it != lm.end(); ++it)
    phi.lattice_maps[it.key()] = parse_matrix(it.value(), path + ".lattice_maps." + it.key());
  return phi;
}

json int_json(const Int& v) {
  static const Int lo = Int(std::numeric_limits<long long>::min());
  static const Int hi = Int(std::numeric_limits<long long>::max());
  if (v >= lo && v <= hi) return json(v.convert_to<long long>());
  return json(v.str());
}

json ivec_json(const IVec& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(int_json(x));
  return a;
}

json matrix_json(const IntMat& m) {
  json a = json::array();
  for (int i = 0; i < m.rows; ++i) a.push_back(ivec_json(m.row(i)));
  return a;
}

json complex_payload(const PLComplex& c) {
  json faces = json::array();
  for (const auto& [id, f] : c.faces) {
    json jf;
    jf["id"] = id;
    jf["rank"] = f.rank;
    json rays = json::array();
    for (const IVec& r : f.rays) rays.push_back(ivec_json(r));
    jf["rays"] = std::move(rays);
    jf["varpi"] = ivec_json(f.varpi);
    jf["vertical"] = f.vertical;
    if (f.genus) jf["genus"] = int_json(*f.genus);
    jf["residue_degree"] = int_json(f.residue_degree);
    faces.push_back(std::move(jf));
  }
  json embs = json::array();
  for (const Embedding& e : c.embeddings) {
    json je;
    je["sub"] = e.sub;
    je["super"] = e.super;
    je["matrix"] = matrix_json(e.matrix);
    embs.push_back(std::move(je));
  }
  json out;
  out["faces"] = std::move(faces);
  out["embeddings"] = std::move(embs);
  return out;
}

json rat_json(const Rat& v) { return json(rat_str(v)); }

}  // namespace

Document parse_document(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ZplError("schema-error", "document is not valid JSON");
  Document doc;
  doc.kind = parse_str(field(j, "$", "kind"), "$.kind");
  doc.version = parse_str(field(j, "$", "version"), "$.version");
  if (doc.version != "1") throw ZplError("version-unsupported", doc.version);
  const json& payload = field(j, "$", "payload");
  const std::string path = "$.payload";
  if (doc.kind == "complex") {
    doc.complex = parse_complex_payload(payload, path);
  } else if (doc.kind == "cover") {
    doc.cover = parse_cover_payload(payload, path);
  } else if (doc.kind == "pl-function") {
    const json& cv = field(payload, path, "covectors");
    if (!cv.is_object()) bad(path + ".covectors", "expected an object");
    for (auto it = cv.begin(); it != cv.end(); ++it)
      doc.function.covectors[it.key()] = parse_qvec(it.value(), path + ".covectors." + it.key());
  } else if (doc.kind == "tropical-decoration") {
    const json& al = field(payload, path, "alpha");
    if (!al.is_array()) bad(path + ".alpha", "expected an array");
    for (size_t i = 0; i < al.size(); ++i) {
      const std::string p = path + ".alpha[" + std::to_string(i) + "]";
      const json& je = al[i];
      std::string ridge = parse_str(field(je, p, "ridge"), p + ".ridge");
      Int ray = parse_int_field(field(je, p, "ray"), p + ".ray");
      if (ray < 0 || ray > 1000000) bad(p + ".ray", "out of range");
      AlphaKey key{ridge, int(ray.convert_to<long>())};
      if (doc.alpha.count(key)) bad(p, "duplicate alpha key");
      doc.alpha[key] = parse_rat_field(field(je, p, "value"), p + ".value");
    }
  } else if (doc.kind == "divisor") {
    const json& co = field(payload, path, "coefficients");
    if (!co.is_object()) bad(path + ".coefficients", "expected an object");
    for (auto it = co.begin(); it != co.end(); ++it)
      doc.divisor.coefficients[it.key()] =
          parse_rat_field(it.value(), path + ".coefficients." + it.key());
  } else {
    bad("$.kind", "unknown kind " + doc.kind);
  }
  return doc;
}

std::string serialize_document(const Document& doc) {
  json j;
  j["kind"] = doc.kind;
  j["version"] = doc.version;
  json payload;
  if (doc.kind == "complex") {
    payload = complex_payload(doc.complex);
  } else if (doc.kind == "cover") {
    payload["source"] = complex_payload(doc.cover.source);
    payload["target"] = complex_payload(doc.cover.target);
    json fm;
    for (const auto& [s, t] : doc.cover.face_map) fm[s] = t;
    payload["face_map"] = std::move(fm);
    json lm;
    for (const auto& [s, m] : doc.cover.lattice_maps) lm[s] = matrix_json(m);
    payload["lattice_maps"] = std::move(lm);
  } else if (doc.kind == "pl-function") {
    json cv;
    for (const auto& [id, v] : doc.function.covectors) {
      json a = json::array();
      for (const Rat& x : v) a.push_back(rat_json(x));
      cv[id] = std::move(a);
    }
    payload["covectors"] = std::move(cv);
  } else if (doc.kind == "tropical-decoration") {
    json al = json::array();
    for (const auto& [key, v] : doc.alpha) {
      json je;
      je["ridge"] = key.first;
      je["ray"] = key.second;
      je["value"] = rat_json(v);
      al.push_back(std::move(je));
    }
    payload["alpha"] = std::move(al);
  } else if (doc.kind == "divisor") {
    json co;
    for (const auto& [id, v] : doc.divisor.coefficients) co[id] = rat_json(v);
    payload["coefficients"] = std::move(co);
  } else {
    throw ZplError("schema-error", "unknown kind " + doc.kind);
  }
  j["payload"] = std::move(payload);
  return j.dump(2) + "\n";
}

Document complex_document(const PLComplex& c) {
  Document d;
  d.kind = "complex";
  d.complex = c;
  return d;
}

Document cover_document(const ComplexCover& c) {
  Document d;
  d.kind = "cover";
  d.cover = c;
  return d;
}

Document function_document(const PLFunction& f) {
  Document d;
  d.kind = "pl-function";
  d.function = f;
  return d;
}

Document decoration_document(const AlphaMap& a) {
  Document d;
  d.kind = "tropical-decoration";
  d.alpha = a;
  return d;
}

Document divisor_document(const CombinatorialDivisor& dv) {
  Document d;
  d.kind = "divisor";
  d.divisor = dv;
  return d;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ZplError("input", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string divisor_text(const std::string& symbol, const CombinatorialDivisor& d) {
  std::string body;
  for (const auto& [id, v] : d.coefficients) {
    if (v == 0) continue;
    if (!body.empty()) body += " + ";
    body += rat_str(v) + "·[" + id + "]";
  }
  if (body.empty()) body = "0";
  return symbol.empty() ? body : symbol + " = " + body;
}

nlohmann::json divisor_payload(const CombinatorialDivisor& d) {
  json co;
  for (const auto& [id, v] : d.coefficients)
    if (v != 0) co[id] = rat_json(v);
  json out;
  out["coefficients"] = co.is_null() ? json::object() : co;
  return out;
}

std::string report_text(const Report& r) {
  if (r.ok()) return "ok\n";
  std::string out;
  for (const Violation& v : r.violations) out += "violation " + v.code + ": " + v.detail + "\n";
  return out;
}

nlohmann::json report_payload(const Report& r) {
  json vs = json::array();
  for (const Violation& v : r.violations) {
    json jv;
    jv["code"] = v.code;
    jv["detail"] = v.detail;
    vs.push_back(std::move(jv));
  }
  json out;
  out["ok"] = r.ok();
  out["violations"] = std::move(vs);
  return out;
}

std::string balance_text(const BalanceReport& b) {
  std::string out = b.balanced ? "balanced\n" : "unbalanced\n";
  for (const auto& [rid, deg] : b.local_degrees)
    out += "local degree at " + rid + ": " + deg.str() + "\n";
  for (const std::string& rid : b.unbalanced_ridges)
    out += "unbalanced ridge " + rid + ": " + b.failures.at(rid) + "\n";
  if (b.degree)
    out += "degree = " + b.degree->str() + "\n";
  else if (b.balanced)
    out += "degree = undefined (" +
           std::string(b.degree_consistent ? "disconnected target" : "inconsistent") + ")\n";
  return out;
}

nlohmann::json balance_payload(const BalanceReport& b) {
  json out;
  out["balanced"] = b.balanced;
  json ld;
  for (const auto& [rid, deg] : b.local_degrees) ld[rid] = int_json(deg);
  out["local_degrees"] = ld.is_null() ? json::object() : ld;
  json fails;
  for (const auto& [rid, why] : b.failures) fails[rid] = why;
  out["failures"] = fails.is_null() ? json::object() : fails;
  out["degree_consistent"] = b.degree_consistent;
  out["degree"] = b.degree ? int_json(*b.degree) : json(nullptr);
  return out;
}

std::string tropical_report_text(const TropicalReport& r) {
  std::string out = report_text(r.report);
  for (const auto& [rid, v] : r.mult_b) out += "mult_b(" + rid + ") = " + rat_str(v) + "\n";
  for (const auto& [rid, v] : r.mult_u) out += "mult_u(" + rid + ") = " + rat_str(v) + "\n";
  for (const std::string& rid : r.degenerate_ridges) out += "degenerate mult_u at " + rid + "\n";
  return out;
}

nlohmann::json tropical_report_payload(const TropicalReport& r) {
  json out = report_payload(r.report);
  json mb, mu;
  for (const auto& [rid, v] : r.mult_b) mb[rid] = rat_json(v);
  for (const auto& [rid, v] : r.mult_u) mu[rid] = rat_json(v);
  out["mult_b"] = mb.is_null() ? json::object() : mb;
  out["mult_u"] = mu.is_null() ? json::object() : mu;
  out["degenerate_ridges"] = r.degenerate_ridges;
  return out;
}

std::string rh_text(const RHReport& r) {
  std::string out;
  out += divisor_text("Δ(δ)", r.different_laplacian) + "\n";
  out += divisor_text("K_rel", r.relative_canonical_divisor) + "\n";
  for (const std::string& id : r.negative_faces) out += "negative different on " + id + "\n";
  if (!r.residuals.coefficients.empty())
    out += divisor_text("residual", r.residuals) + "\n";
  out += r.ok ? "riemann-hurwitz: pass\n" : "riemann-hurwitz: fail\n";
  return out;
}

nlohmann::json rh_payload(const RHReport& r) {
  json out;
  out["ok"] = r.ok;
  out["different_laplacian"] = divisor_payload(r.different_laplacian);
  out["relative_canonical"] = divisor_payload(r.relative_canonical_divisor);
  out["residuals"] = divisor_payload(r.residuals);
  out["negative_faces"] = r.negative_faces;
  return out;
}

}  // namespace zpl
