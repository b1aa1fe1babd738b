/** \file
 * dqc command-line front end: benchmark generation, partitioning, variant
 * compilation, single simulations, seeded sweeps, and the scheduling
 * equivalence verifier.
 */
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dqc/benchgen.hpp"
#include "dqc/config.hpp"
#include "dqc/engine.hpp"
#include "dqc/qasm.hpp"
#include "dqc/scheduler.hpp"
#include "dqc/verify.hpp"

namespace {

using namespace dqc;

std::vector<int> parse_capacities(const std::string& spec) {
    std::vector<int> caps;
    std::stringstream ss(spec);
    std::string cell;
    while (std::getline(ss, cell, ',')) caps.push_back(std::stoi(cell));
    return caps;
}

DistributedCircuit partition_circuit(const Circuit& circ, const ExperimentConfig& cfg) {
    const auto caps = cfg.capacities_for(circ.n_qubits);
    Assignment assignment;
    if (!cfg.assignment_file.empty())
        assignment = load_assignment(cfg.assignment_file, circ.n_qubits, caps);
    else
        assignment = bipartition(interaction_graph(circ), caps, cfg.partition_seed, cfg.fm_starts);
    return annotate_remote(circ, assignment);
}

int cmd_gen(const std::string& bench, int n, int steps, int degree, int layers,
            std::uint64_t seed, const std::string& out) {
    Circuit c;
    if (bench == "tlim") c = gen_tlim(n, steps);
    else if (bench == "qaoa") c = gen_qaoa_maxcut(n, degree, layers, seed);
    else if (bench == "qft") c = gen_qft(n);
    else {
        std::cerr << "unknown benchmark '" << bench << "'\n";
        return 1;
    }
    write_circuit(c, out);
    std::cout << "wrote " << out << ": " << c.n_qubits << " qubits, " << c.count_2q()
              << " 2Q gates, " << c.count_1q() << " 1Q gates\n";
    return 0;
}

int cmd_partition(const std::string& circ_path, int nodes, const std::string& caps_spec,
                  std::uint64_t seed, const std::string& out) {
    if (nodes != 2) {
        std::cerr << "partition: only 2-node bipartitioning is supported\n";
        return 1;
    }
    const Circuit c = read_circuit(circ_path);
    std::vector<int> caps = caps_spec.empty()
                                ? std::vector<int>{(c.n_qubits + 1) / 2, c.n_qubits / 2}
                                : parse_capacities(caps_spec);
    const Assignment a = bipartition(interaction_graph(c), caps, seed);
    save_assignment(a, out);
    const DistributedCircuit dc = annotate_remote(c, a);
    std::cout << "wrote " << out << ": " << dc.remote_count << " remote / "
              << dc.remote_count + dc.local_2q_count << " 2Q gates\n";
    return 0;
}

int cmd_compile(const std::string& circ_path, const std::string& assign_path,
                const std::string& caps_spec, int m, int pairs, double p_succ,
                const std::string& out) {
    const Circuit c = read_circuit(circ_path);
    const std::vector<int> caps = caps_spec.empty()
                                      ? std::vector<int>{(c.n_qubits + 1) / 2, c.n_qubits / 2}
                                      : parse_capacities(caps_spec);
    const Assignment a = load_assignment(assign_path, c.n_qubits, caps);
    const DistributedCircuit dc = annotate_remote(c, a);
    if (m <= 0) m = segment_size(pairs, p_succ);
    const VariantTable table = VariantTable::compile(dc, m);
    table.save_json(dc, out);
    std::cout << "wrote " << out << ": " << table.segments.size() << " segments, m = " << m
              << "\n";
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& design_name_arg,
                 const std::string& bench_name, std::int64_t seed_arg, const std::string& out,
                 const std::string& log_path) {
    ExperimentConfig cfg = load_config(config_path);
    const BenchmarkSpec* spec = &cfg.benchmarks.front();
    if (!bench_name.empty()) {
        spec = nullptr;
        for (const auto& b : cfg.benchmarks)
            if (b.name == bench_name) spec = &b;
        if (!spec) {
            std::cerr << "benchmark '" << bench_name << "' not in config\n";
            return 1;
        }
    }
    const Circuit circ = build_benchmark(*spec);
    const DistributedCircuit dc = partition_circuit(circ, cfg);

    SimConfig sim = cfg.sim;
    if (!design_name_arg.empty()) sim.design = design_from_string(design_name_arg);
    const std::uint64_t seed = seed_arg >= 0 ? std::uint64_t(seed_arg) : cfg.seeds.front();

    EventLog log;
    const EngineContext ctx = EngineContext::prepare(dc, sim);
    const SimResult result = run(dc, sim, ctx, seed, &log);

    const std::string json = result_to_json(result);
    if (out.empty()) {
        std::cout << json << "\n";
    } else {
        std::ofstream f(out);
        f << json << "\n";
        std::cout << "wrote " << out << "\n";
    }
    if (!log_path.empty()) {
        write_event_log(log, log_path);
        std::cout << "wrote " << log_path << "\n";
    }
    std::cout << "design=" << result.design << " benchmark=" << spec->name
              << " depth=" << result.depth << " fidelity=" << result.fidelity
              << " ideal=" << ideal_depth(circ, sim.lat) << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out,
              const std::string& summary_path) {
    const ExperimentConfig cfg = load_config(config_path);

    std::ofstream csv(out);
    if (!csv) {
        std::cerr << "cannot open '" << out << "'\n";
        return 1;
    }
    csv << "design,benchmark,seed,depth,fidelity,links_generated,links_consumed,"
           "links_discarded,links_blocked\n";

    std::ostringstream summary;
    summary << "benchmark            design      mean_depth  depth/ideal  mean_fidelity\n";

    for (const auto& spec : cfg.benchmarks) {
        const Circuit circ = build_benchmark(spec);
        const DistributedCircuit dc = partition_circuit(circ, cfg);
        const double ideal = ideal_depth(circ, cfg.sim.lat);
        for (const Design design : cfg.designs) {
            SimConfig sim = cfg.sim;
            sim.design = design;
            const SweepReport report = sweep(dc, sim, cfg.seeds);
            for (const SimResult& r : report.results) {
                char row[256];
                std::snprintf(row, sizeof(row), "%s,%s,%llu,%.17g,%.17g,%ld,%ld,%ld,%ld\n",
                              r.design.c_str(), spec.name.c_str(),
                              static_cast<unsigned long long>(r.seed), r.depth, r.fidelity,
                              r.links.generated, r.links.consumed, r.links.discarded,
                              r.links.blocked);
                csv << row;
            }
            char line[256];
            std::snprintf(line, sizeof(line), "%-20s %-11s %11.3f %12.3f %14.6g\n",
                          spec.name.c_str(), design_name(design), report.mean_depth,
                          report.mean_depth / ideal, report.mean_fidelity);
            summary << line;
        }
    }

    std::cout << summary.str();
    if (!summary_path.empty()) {
        std::ofstream sf(summary_path);
        sf << summary.str();
        std::cout << "wrote " << summary_path << "\n";
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_verify(int n, int n_segments, std::uint64_t seed) {
    const VerifyReport report = verify_variant_equivalence(n, n_segments, seed);
    std::cout << report.passed << "/" << report.total << " equivalent\n";
    return report.passed == report.total ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dqc: distributed quantum computing co-simulator"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a benchmark circuit");
    std::string gen_bench, gen_out = "circuit.qasm";
    int gen_n = 32, gen_steps = 10, gen_degree = 4, gen_layers = 1;
    std::uint64_t gen_seed = 1;
    gen->add_option("--bench", gen_bench, "tlim | qaoa | qft")->required();
    gen->add_option("--n", gen_n, "qubit count");
    gen->add_option("--steps", gen_steps, "tlim trotter steps");
    gen->add_option("--degree", gen_degree, "qaoa graph degree");
    gen->add_option("--layers", gen_layers, "qaoa layers");
    gen->add_option("--seed", gen_seed, "graph seed");
    gen->add_option("-o,--out", gen_out, "output circuit file");

    // partition
    auto* part = app.add_subcommand("partition", "assign qubits to nodes");
    std::string part_circ, part_caps, part_out = "assignment.txt";
    int part_nodes = 2;
    std::uint64_t part_seed = 7;
    part->add_option("--circ", part_circ, "circuit file")->required();
    part->add_option("--nodes", part_nodes, "node count (2)");
    part->add_option("--cap", part_caps, "capacities, e.g. 16,16");
    part->add_option("--seed", part_seed, "refinement seed");
    part->add_option("-o,--out", part_out, "output assignment file");

    // compile
    auto* comp = app.add_subcommand("compile", "pre-compile segment variants");
    std::string comp_circ, comp_assign, comp_caps, comp_out = "variants.json";
    int comp_m = 0, comp_pairs = 10;
    double comp_psucc = 0.4;
    comp->add_option("--circ", comp_circ, "circuit file")->required();
    comp->add_option("--assign", comp_assign, "assignment file")->required();
    comp->add_option("--cap", comp_caps, "capacities, e.g. 16,16");
    comp->add_option("--m", comp_m, "remote gates per segment (0 = derive)");
    comp->add_option("--pairs", comp_pairs, "communication pairs (for m)");
    comp->add_option("--psucc", comp_psucc, "attempt success probability (for m)");
    comp->add_option("-o,--out", comp_out, "output variant table");

    // simulate
    auto* simc = app.add_subcommand("simulate", "run one seeded simulation");
    std::string sim_config, sim_design, sim_bench, sim_out, sim_log;
    std::int64_t sim_seed = -1;
    simc->add_option("--config", sim_config, "experiment config JSON")->required();
    simc->add_option("--design", sim_design, "design override");
    simc->add_option("--benchmark", sim_bench, "benchmark name from the config");
    simc->add_option("--seed", sim_seed, "seed override");
    simc->add_option("-o,--out", sim_out, "result JSON path");
    simc->add_option("--log", sim_log, "event log path");

    // sweep
    auto* swp = app.add_subcommand("sweep", "run the full design x benchmark x seed grid");
    std::string swp_config, swp_out = "sweep.csv", swp_summary;
    swp->add_option("--config", swp_config, "experiment config JSON")->required();
    swp->add_option("-o,--out", swp_out, "CSV output path");
    swp->add_option("--summary", swp_summary, "summary table path");

    // verify
    auto* ver = app.add_subcommand("verify", "check variant unitary equivalence");
    int ver_n = 8, ver_segments = 100;
    std::uint64_t ver_seed = 7;
    ver->add_option("--n", ver_n, "max qubits per segment (<= 8 recommended)");
    ver->add_option("--segments", ver_segments, "number of random segments");
    ver->add_option("--seed", ver_seed, "generator seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_gen(gen_bench, gen_n, gen_steps, gen_degree, gen_layers, gen_seed, gen_out);
        if (part->parsed())
            return cmd_partition(part_circ, part_nodes, part_caps, part_seed, part_out);
        if (comp->parsed())
            return cmd_compile(comp_circ, comp_assign, comp_caps, comp_m, comp_pairs, comp_psucc, comp_out);
        if (simc->parsed())
            return cmd_simulate(sim_config, sim_design, sim_bench, sim_seed, sim_out, sim_log);
        if (swp->parsed()) return cmd_sweep(swp_config, swp_out, swp_summary);
        if (ver->parsed()) return cmd_verify(ver_n, ver_segments, ver_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
