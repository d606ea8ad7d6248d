#include "cvrpisa/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "cvrpisa/error.hpp"

namespace cvrpisa {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_keyword(std::string_view s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isupper(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
           c == '_';
  });
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double to_real(const std::string& tok, std::string_view where) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError(ParseErrorKind::MalformedNumber,
                     "'" + tok + "' in " + std::string(where));
  }
  return v;
}

std::int64_t to_integer(const std::string& tok, std::string_view where) {
  std::int64_t v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(ParseErrorKind::MalformedNumber,
                     "'" + tok + "' in " + std::string(where));
  }
  return v;
}

std::size_t node_id(const std::string& tok, std::size_t dimension, std::string_view where) {
  const auto id = to_integer(tok, where);
  if (id < 1 || static_cast<std::size_t>(id) > dimension) {
    throw ParseError(ParseErrorKind::DimensionMismatch,
                     "node id " + tok + " outside 1.." + std::to_string(dimension) + " in " +
                         std::string(where));
  }
  return static_cast<std::size_t>(id - 1);
}

// Reads "id x y" triples into a coordinate list of exactly `dimension` nodes.
std::vector<Point> read_coords(const std::vector<std::string>& toks, std::size_t dimension,
                               std::string_view section) {
  if (toks.size() % 3 != 0 || toks.size() / 3 != dimension) {
    throw ParseError(ParseErrorKind::DimensionMismatch,
                     std::string(section) + " has " + std::to_string(toks.size() / 3) +
                         " entries, DIMENSION is " + std::to_string(dimension));
  }
  std::vector<Point> pts(dimension);
  std::vector<bool> seen(dimension, false);
  for (std::size_t k = 0; k < toks.size(); k += 3) {
    const auto id = node_id(toks[k], dimension, section);
    if (seen[id]) {
      throw ParseError(ParseErrorKind::DimensionMismatch,
                       "duplicate node " + toks[k] + " in " + std::string(section));
    }
    seen[id] = true;
    pts[id] = Point{to_real(toks[k + 1], section), to_real(toks[k + 2], section)};
  }
  return pts;
}

DistanceMatrix read_explicit(const std::vector<std::string>& toks, std::size_t n,
                             const std::string& format) {
  DistanceMatrix m(n);
  std::vector<double> vals;
  vals.reserve(toks.size());
  for (const auto& t : toks) vals.push_back(to_real(t, "EDGE_WEIGHT_SECTION"));

  auto expect = [&](std::size_t count) {
    if (vals.size() != count) {
      throw ParseError(ParseErrorKind::DimensionMismatch,
                       "EDGE_WEIGHT_SECTION (" + format + ") has " + std::to_string(vals.size()) +
                           " values, expected " + std::to_string(count));
    }
  };

  std::size_t k = 0;
  if (format == "FULL_MATRIX") {
    expect(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = vals[k++];
  } else if (format == "LOWER_ROW") {
    expect(n * (n - 1) / 2);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) m(i, j) = m(j, i) = vals[k++];
  } else if (format == "LOWER_DIAG_ROW") {
    expect(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = vals[k++];
  } else if (format == "UPPER_ROW") {
    expect(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = vals[k++];
  } else {
    throw ParseError(ParseErrorKind::UnsupportedEdgeWeightType,
                     "EDGE_WEIGHT_FORMAT " + format);
  }
  return m;
}

}  // namespace

std::int64_t Instance::total_demand() const {
  return std::accumulate(demands.begin(), demands.end(), std::int64_t{0});
}

void validate(const Instance& inst) {
  auto fail = [](const std::string& msg) { throw ParseError(ParseErrorKind::InvalidInstance, msg); };
  if (inst.dimension < 2) fail("DIMENSION must be at least 2");
  if (inst.capacity <= 0) fail("CAPACITY must be positive");
  if (inst.depot >= inst.dimension) fail("depot outside node range");
  if (inst.demands.size() != inst.dimension) {
    throw ParseError(ParseErrorKind::DimensionMismatch, "demand count differs from DIMENSION");
  }
  if (inst.demands[inst.depot] != 0) fail("depot demand must be 0");
  for (std::size_t i = 0; i < inst.dimension; ++i) {
    if (inst.demands[i] < 0) fail("negative demand at node " + std::to_string(i + 1));
    if (inst.demands[i] > inst.capacity)
      fail("demand of node " + std::to_string(i + 1) + " exceeds capacity");
  }
  if (inst.coords && inst.coords->size() != inst.dimension) {
    throw ParseError(ParseErrorKind::DimensionMismatch, "coordinate count differs from DIMENSION");
  }
  if (inst.edge_weight_type == EdgeWeightType::Euc2D && !inst.coords) {
    throw ParseError(ParseErrorKind::MissingSection, "NODE_COORD_SECTION required for EUC_2D");
  }
  if (inst.edge_weight_type == EdgeWeightType::Explicit) {
    if (!inst.explicit_matrix) {
      throw ParseError(ParseErrorKind::MissingSection, "EDGE_WEIGHT_SECTION required for EXPLICIT");
    }
    const auto& m = *inst.explicit_matrix;
    if (m.size() != inst.dimension) {
      throw ParseError(ParseErrorKind::DimensionMismatch, "edge weight matrix size differs from DIMENSION");
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m(i, i) != 0.0) fail("explicit matrix diagonal must be zero");
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        if (m(i, j) != m(j, i)) fail("explicit matrix is not symmetric");
        if (m(i, j) < 0.0) fail("explicit matrix has negative entries");
      }
    }
  }
}

Instance parse_instance(std::istream& source) {
  std::map<std::string, std::string> header;
  std::map<std::string, std::vector<std::string>> sections;
  std::string current;
  std::string line;

  while (std::getline(source, line)) {
    const auto t = trim(line);
    if (t.empty()) continue;
    if (t == "EOF") break;

    const auto colon = t.find(':');
    if (colon != std::string::npos) {
      const auto key = trim(std::string_view(t).substr(0, colon));
      if (is_keyword(key) && key.ends_with("_SECTION")) {
        current = key;
        auto rest = split_ws(trim(std::string_view(t).substr(colon + 1)));
        auto& sec = sections[current];
        sec.insert(sec.end(), rest.begin(), rest.end());
        continue;
      }
      if (is_keyword(key)) {
        header[key] = trim(std::string_view(t).substr(colon + 1));
        current.clear();
        continue;
      }
    }
    auto toks = split_ws(t);
    if (is_keyword(toks.front()) && toks.front().ends_with("_SECTION")) {
      current = toks.front();
      auto& sec = sections[current];
      sec.insert(sec.end(), toks.begin() + 1, toks.end());
      continue;
    }
    if (current.empty()) {
      throw ParseError(ParseErrorKind::MalformedNumber, "data outside any section: '" + t + "'");
    }
    auto& sec = sections[current];
    sec.insert(sec.end(), toks.begin(), toks.end());
  }

  auto require_header = [&](const std::string& key) -> const std::string& {
    auto it = header.find(key);
    if (it == header.end()) throw ParseError(ParseErrorKind::MissingSection, key);
    return it->second;
  };

  Instance inst;
  if (auto it = header.find("NAME"); it != header.end()) inst.name = it->second;

  const auto dim = to_integer(require_header("DIMENSION"), "DIMENSION");
  if (dim < 2) throw ParseError(ParseErrorKind::DimensionMismatch, "DIMENSION must be at least 2");
  inst.dimension = static_cast<std::size_t>(dim);
  inst.capacity = to_integer(require_header("CAPACITY"), "CAPACITY");

  const auto& ewt = require_header("EDGE_WEIGHT_TYPE");
  if (ewt == "EUC_2D") {
    inst.edge_weight_type = EdgeWeightType::Euc2D;
  } else if (ewt == "EXPLICIT") {
    inst.edge_weight_type = EdgeWeightType::Explicit;
  } else {
    throw ParseError(ParseErrorKind::UnsupportedEdgeWeightType, ewt);
  }

  if (auto it = sections.find("NODE_COORD_SECTION"); it != sections.end()) {
    inst.coords = read_coords(it->second, inst.dimension, "NODE_COORD_SECTION");
  } else if (auto dd = sections.find("DISPLAY_DATA_SECTION"); dd != sections.end()) {
    inst.coords = read_coords(dd->second, inst.dimension, "DISPLAY_DATA_SECTION");
  }

  if (inst.edge_weight_type == EdgeWeightType::Euc2D) {
    if (!inst.coords) throw ParseError(ParseErrorKind::MissingSection, "NODE_COORD_SECTION");
  } else {
    auto it = sections.find("EDGE_WEIGHT_SECTION");
    if (it == sections.end()) throw ParseError(ParseErrorKind::MissingSection, "EDGE_WEIGHT_SECTION");
    const auto fmt_it = header.find("EDGE_WEIGHT_FORMAT");
    const std::string fmt = fmt_it == header.end() ? std::string("FULL_MATRIX") : fmt_it->second;
    inst.explicit_matrix = read_explicit(it->second, inst.dimension, fmt);
  }

  auto dem = sections.find("DEMAND_SECTION");
  if (dem == sections.end()) throw ParseError(ParseErrorKind::MissingSection, "DEMAND_SECTION");
  const auto& dtoks = dem->second;
  if (dtoks.size() % 2 != 0 || dtoks.size() / 2 != inst.dimension) {
    throw ParseError(ParseErrorKind::DimensionMismatch,
                     "DEMAND_SECTION has " + std::to_string(dtoks.size() / 2) +
                         " entries, DIMENSION is " + std::to_string(inst.dimension));
  }
  inst.demands.assign(inst.dimension, 0);
  std::vector<bool> seen(inst.dimension, false);
  for (std::size_t k = 0; k < dtoks.size(); k += 2) {
    const auto id = node_id(dtoks[k], inst.dimension, "DEMAND_SECTION");
    if (seen[id]) {
      throw ParseError(ParseErrorKind::DimensionMismatch, "duplicate node " + dtoks[k] + " in DEMAND_SECTION");
    }
    seen[id] = true;
    inst.demands[id] = to_integer(dtoks[k + 1], "DEMAND_SECTION");
  }

  inst.depot = 0;
  if (auto dep = sections.find("DEPOT_SECTION"); dep != sections.end()) {
    if (dep->second.empty() || dep->second.front() == "-1") {
      throw ParseError(ParseErrorKind::MissingSection, "DEPOT_SECTION lists no depot");
    }
    inst.depot = node_id(dep->second.front(), inst.dimension, "DEPOT_SECTION");
  }

  validate(inst);
  return inst;
}

Instance parse_instance_string(const std::string& text) {
  std::istringstream is(text);
  return parse_instance(is);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  auto inst = parse_instance(in);
  if (inst.name.empty()) inst.name = path.stem().string();
  return inst;
}

std::string format_instance(const Instance& inst) {
  std::ostringstream os;
  os.precision(17);
  os << "NAME : " << inst.name << "\n";
  os << "TYPE : CVRP\n";
  os << "DIMENSION : " << inst.dimension << "\n";
  os << "CAPACITY : " << inst.capacity << "\n";
  if (inst.edge_weight_type == EdgeWeightType::Euc2D) {
    os << "EDGE_WEIGHT_TYPE : EUC_2D\n";
  } else {
    os << "EDGE_WEIGHT_TYPE : EXPLICIT\n";
    os << "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n";
  }
  if (inst.coords) {
    os << "NODE_COORD_SECTION\n";
    for (std::size_t i = 0; i < inst.dimension; ++i) {
      os << (i + 1) << ' ' << (*inst.coords)[i].x << ' ' << (*inst.coords)[i].y << "\n";
    }
  }
  if (inst.explicit_matrix) {
    os << "EDGE_WEIGHT_SECTION\n";
    const auto& m = *inst.explicit_matrix;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) os << (j ? " " : "") << m(i, j);
      os << "\n";
    }
  }
  os << "DEMAND_SECTION\n";
  for (std::size_t i = 0; i < inst.dimension; ++i) os << (i + 1) << ' ' << inst.demands[i] << "\n";
  os << "DEPOT_SECTION\n" << (inst.depot + 1) << "\n-1\nEOF\n";
  return os.str();
}

DistanceMatrix distance_matrix(const Instance& inst) {
  if (inst.edge_weight_type == EdgeWeightType::Explicit) return *inst.explicit_matrix;
  const auto& pts = *inst.coords;
  const std::size_t n = inst.dimension;
  DistanceMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = pts[i].x - pts[j].x;
      const double dy = pts[i].y - pts[j].y;
      m(i, j) = m(j, i) = std::floor(std::sqrt(dx * dx + dy * dy) + 0.5);
    }
  }
  return m;
}

}  // namespace cvrpisa
