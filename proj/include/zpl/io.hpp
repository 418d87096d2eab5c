#pragma once

#include <string>

#include "json.hpp"
#include "zpl/subdivide.hpp"
#include "zpl/tropical.hpp"

namespace zpl {

// One JSON document per kind; rationals travel as "p/q" strings, integers as
// JSON numbers when they fit and as decimal strings otherwise.
struct Document {
  std::string kind;  // complex | cover | pl-function | tropical-decoration | divisor
  std::string version = "1";
  PLComplex complex;
  ComplexCover cover;
  PLFunction function;
  AlphaMap alpha;
  CombinatorialDivisor divisor;
};

// Structural validation only; throws "schema-error" with the offending field
// path and "version-unsupported". Duplicate face identifiers are rejected.
Document parse_document(const std::string& text);

std::string serialize_document(const Document& doc);

Document complex_document(const PLComplex& c);
Document cover_document(const ComplexCover& c);
Document function_document(const PLFunction& f);
Document decoration_document(const AlphaMap& a);
Document divisor_document(const CombinatorialDivisor& d);

std::string read_file(const std::string& path);  // throws "input"

// Report emitters; the structured forms mirror the document conventions.
std::string divisor_text(const std::string& symbol, const CombinatorialDivisor& d);
nlohmann::json divisor_payload(const CombinatorialDivisor& d);
std::string report_text(const Report& r);
nlohmann::json report_payload(const Report& r);
std::string balance_text(const BalanceReport& b);
nlohmann::json balance_payload(const BalanceReport& b);
std::string tropical_report_text(const TropicalReport& r);
nlohmann::json tropical_report_payload(const TropicalReport& r);
std::string rh_text(const RHReport& r);
nlohmann::json rh_payload(const RHReport& r);

}  // namespace zpl
