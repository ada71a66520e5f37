#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ucvrp/rational.hpp"

namespace ucvrp {

// Vertex 0 is the depot; customers are 1..n.
inline constexpr int kDepot = 0;

// Sorted list of customer vertex ids.
using CustomerSet = std::vector<int>;

struct RawInstance;

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Unsplittable CVRP instance with a dense symmetric metric over
// {depot} ∪ customers. Construct through validate_instance; a value of
// this type always satisfies the metric and demand invariants.
class Instance {
public:
  Instance() = default;

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] int n() const { return static_cast<int>(demands_.size()); }
  [[nodiscard]] int vertex_count() const { return n() + 1; }
  [[nodiscard]] int capacity() const { return capacity_; }

  // Integer demand of customer v (1-based).
  [[nodiscard]] int demand(int v) const { return demands_[v - 1]; }
  [[nodiscard]] const std::vector<int>& demands() const { return demands_; }

  // d_v / k as an exact rational.
  [[nodiscard]] Rational norm_demand(int v) const {
    return Rational(demands_[v - 1], capacity_);
  }

  [[nodiscard]] double cost(int x, int y) const {
    return matrix_[static_cast<std::size_t>(x) * vertex_count() + y];
  }
  // Row x of the cost matrix (length n+1).
  [[nodiscard]] std::span<const double> row(int x) const {
    return {matrix_.data() + static_cast<std::size_t>(x) * vertex_count(),
            static_cast<std::size_t>(vertex_count())};
  }
  [[nodiscard]] const std::vector<double>& matrix() const { return matrix_; }
  [[nodiscard]] const std::optional<std::vector<Point>>& coords() const {
    return coords_;
  }

  [[nodiscard]] CustomerSet customers() const;

  friend bool operator==(const Instance&, const Instance&) = default;

private:
  friend Instance validate_instance(RawInstance raw);

  std::string name_;
  int capacity_ = 1;
  std::vector<int> demands_;
  std::vector<double> matrix_;
  std::optional<std::vector<Point>> coords_;
};

// Unchecked candidate. Either matrix ((n+1)^2 row-major) or coords (n+1
// points, depot first) must be supplied; coords produce exact Euclidean
// distances, optionally rounded to nearest integer as in TSPLIB.
struct RawInstance {
  std::string name;
  std::int64_t capacity = 0;
  std::vector<std::int64_t> demands;
  std::vector<double> matrix;
  std::optional<std::vector<Point>> coords;
  bool round_euclidean = false;
};

// Checks the metric (reflexive, symmetric, triangle inequality with
// additive tolerance 1e-9, non-negative) and 1 <= d_v <= k.
// Throws TriangleViolation, AsymmetricCost, DemandOutOfRange or
// MalformedInstance on the first failure.
Instance validate_instance(RawInstance raw);

// Sum over customers of 2 (d_v/k) c(r,v).
double radial_lower_bound(const Instance& inst);

// Radial lower bound restricted to a customer subset.
double radial_mass(const Instance& inst, std::span<const int> subset);

// Normalised radial distribution function:
//   sum_{v : l < d_v/k <= r} 2 (d_v/k)^t c(r,v)  /  sum_v 2 (d_v/k) c(r,v)
// with exact rational membership. t must be 0 or 1.
// Throws ZeroRadialMass when the denominator vanishes.
double f_integral(const Instance& inst, const Rational& l, const Rational& r,
                  int t);

struct DemandClass {
  CustomerSet small; // d <= delta
  CustomerSet big;   // delta < d <= 1/2
  CustomerSet large; // 1/2 < d <= 1
};

DemandClass classify(const Instance& inst, const Rational& delta);
DemandClass classify(const Instance& inst, std::span<const int> subset,
                     const Rational& delta);

enum class MetricKind { euclidean, random_metric };
enum class DemandLaw { uniform, heavy_tail };

// Deterministic for a fixed seed. Euclidean instances draw points in the
// unit square (depot included); random metrics draw edge weights in (0,1]
// and close them under all-pairs shortest paths.
Instance gen_instance(MetricKind kind, int n, int k, DemandLaw law,
                      std::uint64_t seed);

// The three-customer line instance used throughout the documentation:
// customers at positions 1, 2, 3 on a line, depot at 0, k = 2, d = 1.
Instance line3();

} // namespace ucvrp
