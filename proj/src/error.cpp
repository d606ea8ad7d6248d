#include "cvrpisa/error.hpp"

namespace cvrpisa {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::MissingSection: return "MissingSection";
    case ParseErrorKind::MalformedNumber: return "MalformedNumber";
    case ParseErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ParseErrorKind::UnsupportedEdgeWeightType: return "UnsupportedEdgeWeightType";
    case ParseErrorKind::InvalidInstance: return "InvalidInstance";
  }
  return "ParseError";
}

namespace {
std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}
}  // namespace

MissingFeature::MissingFeature(std::vector<std::string> names)
    : Error("missing features: " + join_names(names)), names_(std::move(names)) {}

}  // namespace cvrpisa
