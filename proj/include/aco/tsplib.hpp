#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aco::tsplib {

enum class EdgeWeightType { Euc2d, Ceil2d, Att };

std::string_view to_string(EdgeWeightType type) noexcept;
std::optional<EdgeWeightType> edge_weight_type_from_string(std::string_view keyword) noexcept;

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

struct NodeCoord {
  int id = 0;  // 1-based, as in the file
  double x = 0.0;
  double y = 0.0;
  bool operator==(const NodeCoord&) const = default;
};

/// A parsed and validated NODE_COORD_SECTION instance. Coordinates are
/// stored sorted by id, so node_coords[i].id == i + 1.
struct RawTspFile {
  std::string name;
  std::string comment;
  int dimension = 0;
  EdgeWeightType edge_weight_type = EdgeWeightType::Euc2d;
  std::vector<NodeCoord> node_coords;

  bool operator==(const RawTspFile&) const = default;
};

enum class ErrorKind {
  UnsupportedEdgeWeightType,
  UnsupportedProblemType,
  MissingSection,
  DuplicateNodeId,
  DimensionMismatch,
  Malformed,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

class ParseError : public std::runtime_error {
 public:
  ParseError(ErrorKind kind, std::size_t line, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  /// 1-based line number; 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::size_t line_;
};

/// Parses the text of a `.tsp` file. Header keywords may appear in any order;
/// parsing stops at `EOF` or at end of input.
RawTspFile parse_instance(std::string_view text);

RawTspFile load_instance(const std::filesystem::path& path);

/// Serializes back to TSPLIB text. parse_instance(write_instance(f)) == f.
std::string write_instance(const RawTspFile& file);

/// TSPLIB integer distance for the given metric. Symmetric in (a, b).
std::int64_t distance(Point a, Point b, EdgeWeightType type) noexcept;

/// Best-known tour length from the TSPLIB registry, when the instance is one
/// this library knows about.
std::optional<double> best_known_length(std::string_view instance_name) noexcept;

/// Reads an optimal-tour file as a plain permutation (TOUR_SECTION, 1-based,
/// terminated by -1 or EOF). Returned cities are 0-based.
std::vector<std::uint32_t> parse_tour(std::string_view text);

}  // namespace aco::tsplib
