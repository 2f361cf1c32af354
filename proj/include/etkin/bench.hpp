#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "etkin/ik.hpp"

namespace etkin {

// One benchmark entrant: a labelled solver configuration. Budgets and the
// convergence threshold are overridden per campaign block.
struct BenchMethod {
  std::string label;
  IkOptions options;
};

// Parse a method specification: "NR", "NR-pinv", "GN", "GN-pinv",
// "LM-Wampler[:lambda]", "LM-Chan[:lambda]", "LM-Sugihara[:wn]".
// The label is canonicalised, e.g. "LM-Chan:0.1".
BenchMethod parse_method_spec(const std::string& spec);

struct BenchConfig {
  int problems = 1000;
  int max_searches = 1;
  int max_iterations = 500;
  std::uint64_t seed = 0;
  int workers = 1;
  double e_min = 1e-10;
};

struct BenchRow {
  std::string method;
  int searches_allowed = 0;
  int iter_allowed = 0;
  double mean_iter = 0.0;     // over solved problems
  double median_iter = 0.0;   // over solved problems
  long infeasible_count = 0;
  double infeasible_pct = 0.0;
  double mean_searches = 0.0;  // over solved problems
  double max_searches = 0.0;   // over solved problems
};

struct BenchReport {
  std::string model;
  int problems = 0;
  std::uint64_t seed = 0;
  std::vector<BenchRow> rows;
};

// Run every method against the same problem set: problem i fixes a random
// reachable pose (forward kinematics of a random in-limits configuration)
// and each solver attacks it with a per-problem derived seed. Worker count
// only partitions the problem indices, so the report is byte-identical
// regardless of parallelism.
BenchReport run_campaign(const Ets& model,
                         const std::vector<BenchMethod>& methods,
                         const BenchConfig& cfg);

// CSV with the exact header
// method,searches_allowed,iter_allowed,mean_iter,median_iter,
// infeasible_count,infeasible_pct,mean_searches,max_searches
// and shortest round-trip numbers.
std::string to_csv(const BenchReport& report);

// Same rows plus campaign metadata, keys sorted.
std::string to_json(const BenchReport& report);

// Median with the even-count convention: the mean of the two central values.
double median(std::vector<double> values);

}  // namespace etkin
