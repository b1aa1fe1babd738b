/** \file
 * JSON experiment configuration: benchmark list, partitioning setup, and the
 * entanglement/noise/engine parameter sections shared by the simulate and
 * sweep commands.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqc/benchgen.hpp"
#include "dqc/engine.hpp"

namespace dqc {

struct BenchmarkSpec {
    std::string name;
    std::string kind;  // tlim | qaoa | qft | file
    int n = 0;
    int steps = 1;
    int degree = 4;
    int layers = 1;
    std::uint64_t graph_seed = 1;
    std::string file;  // kind == "file"
};

Circuit build_benchmark(const BenchmarkSpec& spec);

struct ExperimentConfig {
    std::vector<BenchmarkSpec> benchmarks;
    std::vector<Design> designs;
    std::vector<std::uint64_t> seeds;

    int nodes = 2;
    std::optional<std::vector<int>> capacities;  // default: balanced halves
    std::uint64_t partition_seed = 7;
    int fm_starts = 16;
    std::string assignment_file;  // optional import instead of partitioning

    SimConfig sim;  // design field is overwritten per sweep cell

    std::vector<int> capacities_for(int n_qubits) const;
};

ExperimentConfig load_config(const std::string& path);

}  // namespace dqc
