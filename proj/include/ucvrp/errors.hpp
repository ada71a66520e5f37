#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ucvrp {

// Base of every domain error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class TriangleViolation : public Error {
public:
  TriangleViolation(int x, int y, int z, double excess)
      : Error("triangle inequality violated: c(" + std::to_string(x) + "," +
              std::to_string(y) + ") > c(" + std::to_string(x) + "," +
              std::to_string(z) + ") + c(" + std::to_string(z) + "," +
              std::to_string(y) + ") by " + std::to_string(excess)),
        x(x), y(y), z(z) {}
  int x, y, z;
};

class AsymmetricCost : public Error {
public:
  AsymmetricCost(int x, int y)
      : Error("asymmetric cost between " + std::to_string(x) + " and " +
              std::to_string(y)),
        x(x), y(y) {}
  int x, y;
};

class DemandOutOfRange : public Error {
public:
  explicit DemandOutOfRange(int v)
      : Error("demand of customer " + std::to_string(v) +
              " outside [1, capacity]"),
        vertex(v) {}
  int vertex;
};

class MalformedInstance : public Error {
public:
  using Error::Error;
};

class ZeroRadialMass : public Error {
public:
  ZeroRadialMass() : Error("radial mass is zero (every customer at the depot)") {}
};

class SubsetTooLarge : public Error {
public:
  SubsetTooLarge(std::size_t size, std::size_t cap)
      : Error("subset of " + std::to_string(size) +
              " customers exceeds the exact-TSP cap " + std::to_string(cap)),
        size(size), cap(cap) {}
  std::size_t size, cap;
};

class KeepNotVisited : public Error {
public:
  explicit KeepNotVisited(int v)
      : Error("vertex " + std::to_string(v) + " is not on the walk"),
        vertex(v) {}
  int vertex;
};

class DemandExceedsCapacity : public Error {
public:
  explicit DemandExceedsCapacity(int v)
      : Error("customer " + std::to_string(v) + " exceeds vehicle capacity"),
        vertex(v) {}
  int vertex;
};

class CatalogTooLarge : public Error {
public:
  explicit CatalogTooLarge(std::uint64_t estimate)
      : Error("tour catalog needs at least " + std::to_string(estimate) +
              " sets, above the size cap"),
        estimate(estimate) {}
  std::uint64_t estimate;
};

class LpFailure : public Error {
public:
  using Error::Error;
};

class InstanceTooLarge : public Error {
public:
  InstanceTooLarge(int n, int cap)
      : Error("instance with " + std::to_string(n) +
              " customers exceeds the oracle cap " + std::to_string(cap)),
        n(n), cap(cap) {}
  int n, cap;
};

class NoSignChange : public Error {
public:
  using Error::Error;
};

class DomainViolation : public Error {
public:
  using Error::Error;
};

} // namespace ucvrp
