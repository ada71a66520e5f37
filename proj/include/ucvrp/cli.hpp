#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ucvrp/instance.hpp"

namespace ucvrp::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kViolation = 1;
inline constexpr int kUsage = 2;

// Full command line, args[0] being the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

struct InvariantFailure {
  std::string instance;
  std::string invariant;
  std::string detail;
};

struct InvariantSummary {
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::vector<InvariantFailure> failures;
};

// Runs every lemma and lower-bound invariant on one instance; the
// oracle-backed ones only when n <= oracle_limit.
void check_instance(const Instance& inst, const std::string& id,
                    InvariantSummary& summary, std::uint64_t seed = 0,
                    int oracle_limit = 9);

nlohmann::json to_json(const InvariantSummary& s);

struct BenchRow {
  std::string instance;
  int n = 0;
  int k = 0;
  std::string algorithm;
  nlohmann::json params;
  double cost = 0.0;
  std::optional<double> opt;
  std::optional<double> ratio;
  std::optional<double> bound;
  double radial = 0.0;
  double tsp = 0.0;
  std::optional<double> lp;
  std::optional<double> wall_ms;
  std::uint64_t seed = 0;
};

struct BenchOptions {
  std::string suite = "small"; // small | ratio
  int seeds = 3;
  bool timing = false;
};

// Deterministic instance family of a suite, with ids.
std::vector<std::pair<std::string, Instance>> bench_instances(
    const std::string& suite);

std::vector<BenchRow> run_bench(const BenchOptions& options);

nlohmann::json to_json(const BenchRow& row);
std::string to_csv(const std::vector<BenchRow>& rows);

} // namespace ucvrp::cli
