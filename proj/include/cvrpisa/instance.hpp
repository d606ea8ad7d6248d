#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace cvrpisa {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

enum class EdgeWeightType { Euc2D, Explicit };

// Dense symmetric matrix with zero diagonal; row-major storage.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }
  const std::vector<double>& data() const noexcept { return d_; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

// A parsed CVRP instance. Node ids are 0-based in memory, 1-based on disk.
struct Instance {
  std::string name;
  std::size_t dimension = 0;
  std::int64_t capacity = 0;
  std::size_t depot = 0;
  std::optional<std::vector<Point>> coords;
  std::vector<std::int64_t> demands;
  EdgeWeightType edge_weight_type = EdgeWeightType::Euc2D;
  std::optional<DistanceMatrix> explicit_matrix;

  std::size_t customer_count() const noexcept { return dimension == 0 ? 0 : dimension - 1; }
  std::int64_t total_demand() const;
  bool has_coords() const noexcept { return coords.has_value(); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Parses a CVRPLib/TSPLIB document. Throws ParseError.
Instance parse_instance(std::istream& source);
Instance parse_instance_string(const std::string& text);
Instance load_instance(const std::filesystem::path& path);

// Writes a document that parse_instance reads back to an equal Instance.
std::string format_instance(const Instance& inst);

// TSPLIB nearest-integer rounding for EUC_2D, verbatim copy for EXPLICIT.
DistanceMatrix distance_matrix(const Instance& inst);

// Checks every Instance invariant; throws ParseError(InvalidInstance) on violation.
void validate(const Instance& inst);

}  // namespace cvrpisa
