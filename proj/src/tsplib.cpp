#include "aco/tsplib.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace aco::tsplib {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view token) {
  T value{};
  // from_chars rejects a leading '+', which some generators emit.
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

bool looks_numeric(std::string_view token) {
  if (token.empty()) return false;
  const char c = token.front();
  return (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.';
}

struct HeaderLine {
  std::string_view keyword;
  std::string_view value;
};

// Splits "KEYWORD : value", "KEYWORD: value" and bare "KEYWORD".
HeaderLine split_header(std::string_view line) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) {
    const auto tokens = split_ws(line);
    return {tokens.empty() ? std::string_view{} : tokens.front(), {}};
  }
  return {trim(line.substr(0, colon)), trim(line.substr(colon + 1))};
}

std::string format_coord(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

std::string_view to_string(EdgeWeightType type) noexcept {
  switch (type) {
    case EdgeWeightType::Euc2d: return "EUC_2D";
    case EdgeWeightType::Ceil2d: return "CEIL_2D";
    case EdgeWeightType::Att: return "ATT";
  }
  return "UNKNOWN";
}

std::optional<EdgeWeightType> edge_weight_type_from_string(std::string_view keyword) noexcept {
  if (keyword == "EUC_2D") return EdgeWeightType::Euc2d;
  if (keyword == "CEIL_2D") return EdgeWeightType::Ceil2d;
  if (keyword == "ATT") return EdgeWeightType::Att;
  return std::nullopt;
}

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::UnsupportedEdgeWeightType: return "UnsupportedEdgeWeightType";
    case ErrorKind::UnsupportedProblemType: return "UnsupportedProblemType";
    case ErrorKind::MissingSection: return "MissingSection";
    case ErrorKind::DuplicateNodeId: return "DuplicateNodeId";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

ParseError::ParseError(ErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) +
                         (line > 0 ? " at line " + std::to_string(line) : std::string{}) + ": " +
                         detail),
      kind_(kind),
      line_(line) {}

RawTspFile parse_instance(std::string_view text) {
  RawTspFile out;
  std::optional<int> dimension;
  std::size_t dimension_line = 0;
  std::optional<EdgeWeightType> weight_type;
  bool saw_coord_section = false;
  std::size_t coord_section_line = 0;
  std::size_t last_coord_line = 0;
  // id -> line it was declared on, for duplicate reporting.
  std::vector<std::pair<NodeCoord, std::size_t>> coords;

  enum class Mode { Header, Coords, SkipData };
  Mode mode = Mode::Header;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    const auto tokens = split_ws(line);
    if (mode != Mode::Header && looks_numeric(tokens.front())) {
      if (mode == Mode::SkipData) continue;
      if (tokens.size() < 3) {
        throw ParseError(ErrorKind::Malformed, line_no, "expected `id x y`");
      }
      const auto id = parse_number<int>(tokens[0]);
      const auto x = parse_number<double>(tokens[1]);
      const auto y = parse_number<double>(tokens[2]);
      if (!id || !x || !y) {
        throw ParseError(ErrorKind::Malformed, line_no, "cannot parse node coordinate");
      }
      coords.push_back({NodeCoord{*id, *x, *y}, line_no});
      last_coord_line = line_no;
      continue;
    }

    // Anything non-numeric is a keyword line and ends a data section.
    mode = Mode::Header;
    const auto [keyword, value] = split_header(line);
    if (keyword == "EOF") break;
    if (keyword == "NAME") {
      out.name = std::string(value);
    } else if (keyword == "COMMENT") {
      out.comment = out.comment.empty() ? std::string(value)
                                        : out.comment + "\n" + std::string(value);
    } else if (keyword == "TYPE") {
      if (value != "TSP") {
        throw ParseError(ErrorKind::UnsupportedProblemType, line_no,
                         "only symmetric TSP is supported, got `" + std::string(value) + "`");
      }
    } else if (keyword == "DIMENSION") {
      const auto d = parse_number<int>(value);
      if (!d || *d < 1) {
        throw ParseError(ErrorKind::Malformed, line_no, "DIMENSION must be a positive integer");
      }
      dimension = *d;
      dimension_line = line_no;
    } else if (keyword == "EDGE_WEIGHT_TYPE") {
      weight_type = edge_weight_type_from_string(value);
      if (!weight_type) {
        throw ParseError(ErrorKind::UnsupportedEdgeWeightType, line_no,
                         "`" + std::string(value) + "` is not one of EUC_2D, CEIL_2D, ATT");
      }
    } else if (keyword == "EDGE_WEIGHT_SECTION") {
      throw ParseError(ErrorKind::UnsupportedEdgeWeightType, line_no,
                       "explicit edge weight matrices are not supported");
    } else if (keyword == "NODE_COORD_SECTION") {
      if (saw_coord_section) {
        throw ParseError(ErrorKind::Malformed, line_no, "repeated NODE_COORD_SECTION");
      }
      saw_coord_section = true;
      coord_section_line = line_no;
      mode = Mode::Coords;
    } else if (keyword == "DISPLAY_DATA_SECTION" || keyword == "TOUR_SECTION" ||
               keyword == "FIXED_EDGES_SECTION") {
      mode = Mode::SkipData;
    }
    // NODE_COORD_TYPE, DISPLAY_DATA_TYPE, EDGE_WEIGHT_FORMAT and unknown
    // specification keywords carry nothing this parser needs.
  }

  if (!dimension) throw ParseError(ErrorKind::MissingSection, 0, "missing DIMENSION");
  if (!weight_type) throw ParseError(ErrorKind::MissingSection, 0, "missing EDGE_WEIGHT_TYPE");
  if (!saw_coord_section) {
    throw ParseError(ErrorKind::MissingSection, 0, "missing NODE_COORD_SECTION");
  }

  const auto n = static_cast<std::size_t>(*dimension);
  std::vector<std::size_t> seen_at(n + 1, 0);
  for (const auto& [coord, line] : coords) {
    if (coord.id < 1 || static_cast<std::size_t>(coord.id) > n) {
      throw ParseError(ErrorKind::DimensionMismatch, line,
                       "node id " + std::to_string(coord.id) + " outside 1.." +
                           std::to_string(n) + " (DIMENSION declared at line " +
                           std::to_string(dimension_line) + ")");
    }
    auto& first = seen_at[static_cast<std::size_t>(coord.id)];
    if (first != 0) {
      throw ParseError(ErrorKind::DuplicateNodeId, line,
                       "node id " + std::to_string(coord.id) + " already defined at line " +
                           std::to_string(first));
    }
    first = line;
  }
  if (coords.size() != n) {
    throw ParseError(ErrorKind::DimensionMismatch,
                     last_coord_line == 0 ? coord_section_line : last_coord_line,
                     "DIMENSION is " + std::to_string(n) + " but " +
                         std::to_string(coords.size()) + " node coordinates were listed");
  }

  out.dimension = *dimension;
  out.edge_weight_type = *weight_type;
  out.node_coords.reserve(n);
  for (const auto& entry : coords) out.node_coords.push_back(entry.first);
  std::sort(out.node_coords.begin(), out.node_coords.end(),
            [](const NodeCoord& a, const NodeCoord& b) { return a.id < b.id; });
  return out;
}

RawTspFile load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(ErrorKind::Io, 0, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string write_instance(const RawTspFile& file) {
  std::string out;
  out += "NAME : " + file.name + "\n";
  if (!file.comment.empty()) {
    std::string_view rest = file.comment;
    while (true) {
      const auto nl = rest.find('\n');
      out += "COMMENT : " + std::string(rest.substr(0, nl)) + "\n";
      if (nl == std::string_view::npos) break;
      rest.remove_prefix(nl + 1);
    }
  }
  out += "TYPE : TSP\n";
  out += "DIMENSION : " + std::to_string(file.dimension) + "\n";
  out += "EDGE_WEIGHT_TYPE : " + std::string(to_string(file.edge_weight_type)) + "\n";
  out += "NODE_COORD_SECTION\n";
  for (const auto& c : file.node_coords) {
    out += std::to_string(c.id) + " " + format_coord(c.x) + " " + format_coord(c.y) + "\n";
  }
  out += "EOF\n";
  return out;
}

std::int64_t distance(Point a, Point b, EdgeWeightType type) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  switch (type) {
    case EdgeWeightType::Euc2d:
      return static_cast<std::int64_t>(std::sqrt(dx * dx + dy * dy) + 0.5);
    case EdgeWeightType::Ceil2d:
      return static_cast<std::int64_t>(std::ceil(std::sqrt(dx * dx + dy * dy)));
    case EdgeWeightType::Att: {
      const double r = std::sqrt((dx * dx + dy * dy) / 10.0);
      const auto t = static_cast<std::int64_t>(r + 0.5);
      return static_cast<double>(t) < r ? t + 1 : t;
    }
  }
  return 0;
}

std::optional<double> best_known_length(std::string_view instance_name) noexcept {
  struct Entry {
    std::string_view name;
    double length;
  };
  static constexpr std::array<Entry, 14> kRegistry{{
      {"att48", 10628},   {"att532", 27686},  {"berlin52", 7542},  {"eil101", 629},
      {"kroA100", 21282}, {"ch150", 6528},    {"u159", 42080},     {"pcb442", 50778},
      {"p654", 34643},    {"u724", 41910},    {"pcb1173", 56892},  {"pr2392", 378032},
      {"rat99", 1211},    {"lin105", 14379},
  }};
  for (const auto& e : kRegistry) {
    if (e.name == instance_name) return e.length;
  }
  return std::nullopt;
}

std::vector<std::uint32_t> parse_tour(std::string_view text) {
  std::vector<std::uint32_t> tour;
  bool in_section = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (!in_section) {
      if (split_header(line).keyword == "TOUR_SECTION") in_section = true;
      continue;
    }
    if (line == "EOF") break;
    bool done = false;
    for (const auto token : split_ws(line)) {
      const auto id = parse_number<long>(token);
      if (!id) throw ParseError(ErrorKind::Malformed, line_no, "bad tour entry");
      if (*id == -1) {
        done = true;
        break;
      }
      if (*id < 1) throw ParseError(ErrorKind::Malformed, line_no, "tour ids are 1-based");
      tour.push_back(static_cast<std::uint32_t>(*id - 1));
    }
    if (done) break;
  }
  if (!in_section) throw ParseError(ErrorKind::MissingSection, 0, "missing TOUR_SECTION");
  return tour;
}

}  // namespace aco::tsplib
