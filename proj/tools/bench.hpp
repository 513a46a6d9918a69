#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "cold/graph.hpp"

namespace cold::bench {

// Sweep description read from a flat key=value file. Each cell of the
// sweep is one generated instance; every method of the experiment runs on
// that same instance and must agree on the output before times are kept.
struct BenchConfig {
    std::string experiment = "all";  // essential | mecsize | design | all
    std::vector<std::size_t> sizes;
    double avg_degree = 2.0;  // edge count m = round(avg_degree * n)
    std::size_t instances = 5;
    std::size_t repetitions = 5;
    std::uint64_t seed = 1;
};

BenchConfig parse_config(std::istream& in, const std::string& origin);
BenchConfig read_config_file(const std::string& path);

// Median wall time of reps runs of fn, in seconds, on a monotonic clock.
double median_seconds(std::size_t reps, const std::function<void()>& fn);

// Random partially directed instance for the essential-graph experiment:
// a connected random graph carrying the arcs of the unshielded colliders
// of one random acyclic orientation.
MixedGraph random_mpdag_instance(std::size_t n, std::size_t m, std::uint64_t seed);

// Runs the sweep. CSV rows (schema in the header row) go to `csv`, notes
// and skipped-cell diagnostics to `log`. Worker count comes from the
// COLD_THREADS environment variable, default 1. Returns 0 on success, 1
// when methods disagreed on some instance (the sweep aborts).
int run(const BenchConfig& cfg, std::ostream& csv, std::ostream& log);

// Runs the sweep twice and compares every column except wall_time_s,
// which is not reproducible. Returns 0 when stable.
int check_stability(const BenchConfig& cfg, std::ostream& log);

}  // namespace cold::bench
