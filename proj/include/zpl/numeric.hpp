#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace zpl {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

// Typed failure with a stable machine-readable code ("not-strictly-convex",
// "unbalanced-at-ridge", ...). detail() carries the human-readable part.
class ZplError : public std::runtime_error {
public:
  ZplError(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }
inline Rat abs(const Rat& a) { return a < 0 ? Rat(-a) : a; }

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

// gcd of all entries, nonnegative; 0 for the zero vector.
inline Int content(const IVec& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g;
}

inline bool is_zero(const IVec& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

inline bool is_zero(const QVec& v) {
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

// v / content(v); the zero vector is returned unchanged.
inline IVec primitive(IVec v) {
  Int g = content(v);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

inline Int dot(const IVec& a, const IVec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dotQ(const IVec& a, const QVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

inline Rat dotQ(const QVec& a, const QVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline QVec to_q(const IVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

// Exact only: every coordinate must be integral.
inline IVec to_i(const QVec& v) {
  IVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (den(v[i]) != 1) throw ZplError("not-integral", "rational vector has a non-integer coordinate");
    r[i] = num(v[i]);
  }
  return r;
}

// Serialization used everywhere: "p/q", plain "p" when q = 1.
inline std::string rat_str(const Rat& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw ZplError("bad-rational", "empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int p(s.substr(0, slash));
    Int q(s.substr(slash + 1));
    if (q == 0) throw ZplError("bad-rational", "zero denominator in '" + s + "'");
    return Rat(p, q);
  } catch (const ZplError&) {
    throw;
  } catch (const std::exception&) {
    throw ZplError("bad-rational", "cannot parse '" + s + "'");
  }
}

inline std::string vec_str(const IVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

inline std::string vec_str(const QVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += rat_str(v[i]);
  }
  return s + ")";
}

// lcm of positive rationals: lcm(p1/q1, p2/q2) = lcm(p1,p2)/gcd(q1,q2).
// This is the least positive generator of the intersection of the cyclic
// groups they generate.
inline Rat rat_lcm(const Rat& a, const Rat& b) {
  return Rat(lcm(num(a), num(b)), gcd(den(a), den(b)));
}

}  // namespace zpl
