#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "zpl/io.hpp"
#include "zpl/measure.hpp"
#include "zpl/monoid.hpp"

namespace {

using namespace zpl;
using nlohmann::json;

// exit 2 = the input could not be used at all; everything else semantic (1)
bool is_input_code(const std::string& code) {
  return code == "schema-error" || code == "version-unsupported" || code == "input" ||
         code == "unknown-face" || code == "bad-argument" || code == "bad-rational";
}

Document load(const std::string& path, const std::string& kind) {
  Document d = parse_document(read_file(path));
  if (d.kind != kind) throw ZplError("input", path + ": expected a " + kind + " document");
  return d;
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

IVec parse_point(const std::string& s) {
  IVec out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, ',')) {
    size_t a = cur.find_first_not_of(" \t");
    size_t b = cur.find_last_not_of(" \t");
    if (a == std::string::npos) throw ZplError("bad-argument", "bad point '" + s + "'");
    try {
      out.push_back(Int(cur.substr(a, b - a + 1)));
    } catch (...) {
      throw ZplError("bad-argument", "bad point '" + s + "'");
    }
  }
  if (out.empty()) throw ZplError("bad-argument", "empty point");
  return out;
}

int cmd_validate(const std::string& path, const std::string& alpha_path, bool js) {
  Document d = parse_document(read_file(path));
  if (d.kind == "complex") {
    if (!alpha_path.empty()) {
      Document a = load(alpha_path, "tropical-decoration");
      TropicalReport r = validate_tropical({d.complex, a.alpha});
      if (js)
        print_json(tropical_report_payload(r));
      else
        std::cout << tropical_report_text(r);
      return r.ok() ? 0 : 1;
    }
    Report r = validate_complex(d.complex);
    if (js)
      print_json(report_payload(r));
    else
      std::cout << report_text(r);
    return r.ok() ? 0 : 1;
  }
  if (d.kind == "cover") {
    Report all;
    for (const Violation& v : validate_complex(d.cover.source).violations)
      all.violations.push_back({"source-" + v.code, v.detail});
    for (const Violation& v : validate_complex(d.cover.target).violations)
      all.violations.push_back({"target-" + v.code, v.detail});
    if (all.ok()) all = validate_cover(d.cover);
    if (js)
      print_json(report_payload(all));
    else
      std::cout << report_text(all);
    return all.ok() ? 0 : 1;
  }
  throw ZplError("input", "validate expects a complex or cover document");
}

int cmd_info(const std::string& path, bool js) {
  Document d = load(path, "complex");
  const PLComplex& c = d.complex;
  json faces;
  std::ostringstream text;
  text << "dim " << complex_dim(c) << ", " << (complex_is_conical(c) ? "conical" : "sliced")
       << ", " << (complex_is_pure(c) ? "pure" : "not pure") << "\n";
  for (const auto& [id, f] : c.faces) {
    FaceReport r = analyze_face(f);
    if (js) {
      json jf;
      jf["rank"] = r.rank;
      jf["rays"] = r.ray_count;
      jf["simplicial"] = r.simplicial;
      if (r.det) jf["det"] = r.det->str();
      jf["root_index"] = r.root_index.str();
      json m = json::array();
      for (const Int& x : r.mults) m.push_back(x.str());
      jf["mults"] = std::move(m);
      jf["vertical"] = f.vertical;
      faces[id] = std::move(jf);
    } else {
      text << "face " << id << ": rank " << r.rank << ", rays " << r.ray_count << ", "
           << (r.simplicial ? "simplicial" : "non-simplicial");
      if (r.det) text << ", det " << r.det->str();
      text << ", root index " << r.root_index.str() << ", mults ";
      IVec m = r.mults;
      text << vec_str(m) << "\n";
    }
  }
  if (js) {
    json out;
    out["dim"] = complex_dim(c);
    out["conical"] = complex_is_conical(c);
    out["pure"] = complex_is_pure(c);
    out["faces"] = faces.is_null() ? json::object() : faces;
    print_json(out);
  } else {
    std::cout << text.str();
  }
  return 0;
}

int cmd_volume(const std::string& path, bool js) {
  Document d = load(path, "complex");
  json out;
  std::ostringstream text;
  for (const auto& [id, f] : d.complex.faces) {
    std::string vol, trunc;
    try {
      vol = rat_str(conformal_volume(f).conformal_volume);
    } catch (const ZplError& e) {
      vol = e.code();
    }
    try {
      trunc = rat_str(simplicial_face_volume(f));
    } catch (const ZplError& e) {
      trunc = e.code();
    }
    if (js) {
      json jf;
      jf["volume"] = vol;
      jf["truncated"] = trunc;
      out[id] = std::move(jf);
    } else {
      text << id << ": volume = " << vol << ", truncated = " << trunc << "\n";
    }
  }
  if (js)
    print_json(out.is_null() ? json::object() : out);
  else
    std::cout << text.str();
  return 0;
}

int cmd_hilbert(const std::string& path, const std::string& face, bool js) {
  Document d = load(path, "complex");
  json out;
  std::ostringstream text;
  for (const auto& [id, f] : d.complex.faces) {
    if (!face.empty() && id != face) continue;
    std::vector<IVec> hb = hilbert_basis(f.rays, f.rank);
    if (js) {
      json a = json::array();
      for (const IVec& v : hb) {
        json jv = json::array();
        for (const Int& x : v) jv.push_back(x.str());
        a.push_back(std::move(jv));
      }
      out[id] = std::move(a);
    } else {
      text << id << ":";
      for (const IVec& v : hb) text << " " << vec_str(v);
      text << "\n";
    }
  }
  if (!face.empty() && !d.complex.faces.count(face)) throw ZplError("unknown-face", face);
  if (js)
    print_json(out.is_null() ? json::object() : out);
  else
    std::cout << text.str();
  return 0;
}

int cmd_hj(const std::string& path, const std::string& face, bool js) {
  Document d = load(path, "complex");
  HJResolution r = hj_resolve_2d(face_of(d.complex, face));
  if (js) {
    json out;
    json rays = json::array(), ins = json::array();
    for (const IVec& v : r.rays) {
      json jv = json::array();
      for (const Int& x : v) jv.push_back(x.str());
      rays.push_back(std::move(jv));
    }
    for (const IVec& v : r.inserted) {
      json jv = json::array();
      for (const Int& x : v) jv.push_back(x.str());
      ins.push_back(std::move(jv));
    }
    out["rays"] = std::move(rays);
    out["inserted"] = std::move(ins);
    print_json(out);
  } else {
    std::cout << "rays:";
    for (const IVec& v : r.rays) std::cout << " " << vec_str(v);
    std::cout << "\ninserted:";
    for (const IVec& v : r.inserted) std::cout << " " << vec_str(v);
    std::cout << "\n";
  }
  return 0;
}

int cmd_subdivide(const std::string& path, const std::string& face, const std::string& point,
                  bool) {
  Document d = load(path, "complex");
  ComplexMap m = stellar_subdivide(d.complex, face, parse_point(point));
  std::cout << serialize_document(cover_document(m));
  return 0;
}

int cmd_balance(const std::string& path, bool js) {
  Document d = load(path, "cover");
  BalanceReport b = balance_report(d.cover);
  if (js)
    print_json(balance_payload(b));
  else
    std::cout << balance_text(b);
  return b.balanced ? 0 : 1;
}

int cmd_pullback(const std::string& path, const std::string& cycle, const std::string& func,
                 const std::string& sub, bool js) {
  Document d = load(path, "cover");
  int given = int(!cycle.empty()) + int(!func.empty()) + int(!sub.empty());
  if (given != 1)
    throw ZplError("bad-argument", "pullback needs exactly one of --cycle, --function, --subdivision");
  if (!cycle.empty()) {
    Document w = load(cycle, "divisor");
    CombinatorialDivisor out = pullback_cycle(d.cover, w.divisor);
    if (js)
      std::cout << serialize_document(divisor_document(out));
    else
      std::cout << divisor_text("φ*D", out) << "\n";
    return 0;
  }
  if (!func.empty()) {
    Document f = load(func, "pl-function");
    PLFunction out = pullback_function(d.cover, f.function);
    if (js) {
      std::cout << serialize_document(function_document(out));
    } else {
      for (const auto& [id, v] : out.covectors) std::cout << id << ": " << vec_str(v) << "\n";
    }
    return 0;
  }
  Document s = load(sub, "cover");
  PullbackSubdivision out = pullback_subdivision(d.cover, s.cover);
  json j;
  j["subdivision"] = json::parse(serialize_document(cover_document(out.subdivision)));
  j["lifted"] = json::parse(serialize_document(cover_document(out.lifted)));
  print_json(j);
  return 0;
}

int cmd_dilate(const std::string& path, long long e, bool) {
  Document d = load(path, "complex");
  ComplexCover phi = dilation_cover(d.complex, Int(e));
  std::cout << serialize_document(cover_document(phi));
  return 0;
}

TropicalComplex tropical_input(const std::string& path, const std::string& alpha_path) {
  Document d = load(path, "complex");
  AlphaMap alpha;
  if (!alpha_path.empty()) alpha = load(alpha_path, "tropical-decoration").alpha;
  return {d.complex, alpha};
}

int cmd_laplacian(const std::string& path, const std::string& func, const std::string& alpha_path,
                  bool js, bool special) {
  TropicalComplex t = tropical_input(path, alpha_path);
  PLFunction f = load(func, "pl-function").function;
  CombinatorialDivisor out = special ? specialize(t, f) : laplacian(t, f);
  if (js)
    std::cout << serialize_document(divisor_document(out));
  else
    std::cout << divisor_text(special ? "sp(F)" : "Δ(F)", out) << "\n";
  return 0;
}

int cmd_classify(const std::string& path, const std::string& func, const std::string& alpha_path,
                 bool js) {
  TropicalComplex t = tropical_input(path, alpha_path);
  PLFunction f = load(func, "pl-function").function;
  std::string name = convexity_name(classify_function(t, f));
  if (js) {
    json out;
    out["class"] = name;
    print_json(out);
  } else {
    std::cout << name << "\n";
  }
  return 0;
}

int cmd_canonical(const std::string& path, const std::string& alpha_path, bool js) {
  TropicalComplex t = tropical_input(path, alpha_path);
  CombinatorialDivisor out = canonical_divisor(t);
  if (js)
    std::cout << serialize_document(divisor_document(out));
  else
    std::cout << divisor_text("K", out) << "\n";
  return 0;
}

int cmd_rh(const std::string& path, const std::string& diff, const std::string& alpha_path,
           bool js) {
  Document d = load(path, "cover");
  AlphaMap alpha;
  if (!alpha_path.empty()) alpha = load(alpha_path, "tropical-decoration").alpha;
  PLFunction delta = load(diff, "pl-function").function;
  RHReport r = rh_check({d.cover.source, alpha}, d.cover, delta);
  if (js)
    print_json(rh_payload(r));
  else
    std::cout << rh_text(r);
  return r.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zpl: exact arithmetic for integral piecewise-linear complexes"};
  app.require_subcommand(1);
  app.fallthrough(true);
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

  std::string v_doc, v_alpha;
  auto* validate = app.add_subcommand("validate", "validate a complex, cover, or tropical structure");
  validate->add_option("document", v_doc)->required();
  validate->add_option("--alpha", v_alpha, "tropical decoration document");

  std::string i_doc;
  auto* info = app.add_subcommand("info", "per-face structure report");
  info->add_option("document", i_doc)->required();

  std::string vol_doc;
  auto* volume = app.add_subcommand("volume", "conformal volumes per face");
  volume->add_option("document", vol_doc)->required();

  std::string hb_doc, hb_face;
  auto* hilbert = app.add_subcommand("hilbert-basis", "Hilbert bases of face cones");
  hilbert->add_option("document", hb_doc)->required();
  hilbert->add_option("--face", hb_face);

  std::string hj_doc, hj_face;
  auto* hj = app.add_subcommand("hj-resolve", "minimal regular subdivision of a rank-2 face");
  hj->add_option("document", hj_doc)->required();
  hj->add_option("--face", hj_face)->required();

  std::string sd_doc, sd_face, sd_point;
  bool sd_stellar = false;
  auto* subdivide = app.add_subcommand("subdivide", "subdivide a complex");
  subdivide->add_option("document", sd_doc)->required();
  subdivide->add_flag("--stellar", sd_stellar, "stellar subdivision");
  subdivide->add_option("--face", sd_face)->required();
  subdivide->add_option("--point", sd_point)->required();

  std::string b_doc;
  auto* balance = app.add_subcommand("balance", "local degrees and balancing of a cover");
  balance->add_option("document", b_doc)->required();

  std::string p_doc, p_cycle, p_func, p_sub;
  auto* pullback = app.add_subcommand("pullback", "pull a cycle, function, or subdivision back");
  pullback->add_option("document", p_doc)->required();
  pullback->add_option("--cycle", p_cycle);
  pullback->add_option("--function", p_func);
  pullback->add_option("--subdivision", p_sub);

  std::string dl_doc;
  long long dl_e = 0;
  auto* dilate = app.add_subcommand("dilate", "dilation cover of index e");
  dilate->add_option("document", dl_doc)->required();
  dilate->add_option("-e,--index", dl_e)->required();

  std::string l_doc, l_func, l_alpha;
  auto* lap = app.add_subcommand("laplacian", "discrete Laplacian of a PL function");
  lap->add_option("document", l_doc)->required();
  lap->add_option("-f,--function", l_func)->required();
  lap->add_option("--alpha", l_alpha);

  std::string s_doc, s_func, s_alpha;
  auto* spec = app.add_subcommand("specialize", "divisor specialization of a PL function");
  spec->add_option("document", s_doc)->required();
  spec->add_option("-f,--function", s_func)->required();
  spec->add_option("--alpha", s_alpha);

  std::string c_doc, c_func, c_alpha;
  auto* cls = app.add_subcommand("classify", "harmonicity / convexity of a PL function");
  cls->add_option("document", c_doc)->required();
  cls->add_option("-f,--function", c_func)->required();
  cls->add_option("--alpha", c_alpha);

  std::string k_doc, k_alpha;
  auto* canonical = app.add_subcommand("canonical", "tropical canonical divisor");
  canonical->add_option("document", k_doc)->required();
  canonical->add_option("--alpha", k_alpha);

  std::string rh_doc, rh_diff, rh_alpha;
  auto* rh = app.add_subcommand("rh", "Riemann-Hurwitz check for a cover");
  rh->add_option("document", rh_doc)->required();
  rh->add_option("--different", rh_diff)->required();
  rh->add_option("--alpha", rh_alpha);

  try {
    app.parse(argc, argv);
    bool js = format == "json";
    if (validate->parsed()) return cmd_validate(v_doc, v_alpha, js);
    if (info->parsed()) return cmd_info(i_doc, js);
    if (volume->parsed()) return cmd_volume(vol_doc, js);
    if (hilbert->parsed()) return cmd_hilbert(hb_doc, hb_face, js);
    if (hj->parsed()) return cmd_hj(hj_doc, hj_face, js);
    if (subdivide->parsed()) {
      if (!sd_stellar) throw ZplError("bad-argument", "only --stellar subdivision is available");
      return cmd_subdivide(sd_doc, sd_face, sd_point, js);
    }
    if (balance->parsed()) return cmd_balance(b_doc, js);
    if (pullback->parsed()) return cmd_pullback(p_doc, p_cycle, p_func, p_sub, js);
    if (dilate->parsed()) return cmd_dilate(dl_doc, dl_e, js);
    if (lap->parsed()) return cmd_laplacian(l_doc, l_func, l_alpha, js, false);
    if (spec->parsed()) return cmd_laplacian(s_doc, s_func, s_alpha, js, true);
    if (cls->parsed()) return cmd_classify(c_doc, c_func, c_alpha, js);
    if (canonical->parsed()) return cmd_canonical(k_doc, k_alpha, js);
    if (rh->parsed()) return cmd_rh(rh_doc, rh_diff, rh_alpha, js);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ZplError& e) {
    std::cerr << "error " << e.what() << "\n";
    return is_input_code(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
