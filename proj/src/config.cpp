#include "dqc/config.hpp"

#include <algorithm>
#include <fstream>

#include "dqc/qasm.hpp"
#include "json.hpp"

namespace dqc {

using nlohmann::json;

Circuit build_benchmark(const BenchmarkSpec& spec) {
    if (spec.kind == "tlim") return gen_tlim(spec.n, spec.steps);
    if (spec.kind == "qaoa") return gen_qaoa_maxcut(spec.n, spec.degree, spec.layers, spec.graph_seed);
    if (spec.kind == "qft") return gen_qft(spec.n);
    if (spec.kind == "file") return read_circuit(spec.file);
    throw std::invalid_argument("benchmark '" + spec.name + "': unknown kind '" + spec.kind + "'");
}

std::vector<int> ExperimentConfig::capacities_for(int n_qubits) const {
    if (capacities) return *capacities;
    std::vector<int> caps(nodes, 0);
    for (int i = 0; i < nodes; ++i) caps[i] = (n_qubits + nodes - 1 - i) / nodes;
    return caps;
}

namespace {

BenchmarkSpec parse_benchmark(const json& j) {
    BenchmarkSpec b;
    b.kind = j.at("kind").get<std::string>();
    b.name = j.value("name", b.kind);
    b.n = j.value("n", 0);
    b.steps = j.value("steps", 1);
    b.degree = j.value("degree", 4);
    b.layers = j.value("layers", 1);
    b.graph_seed = j.value("graph_seed", std::uint64_t{1});
    b.file = j.value("file", std::string{});
    return b;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config '" + path + "': " + e.what());
    }

    ExperimentConfig cfg;

    if (j.contains("benchmarks"))
        for (const auto& jb : j.at("benchmarks")) cfg.benchmarks.push_back(parse_benchmark(jb));
    else if (j.contains("benchmark"))
        cfg.benchmarks.push_back(parse_benchmark(j.at("benchmark")));
    if (cfg.benchmarks.empty())
        throw std::runtime_error("config '" + path + "': no benchmark section");

    if (j.contains("designs"))
        for (const auto& d : j.at("designs"))
            cfg.designs.push_back(design_from_string(d.get<std::string>()));
    else
        cfg.designs = {Design::Original, Design::SyncBuf,  Design::AsyncBuf,
                       Design::AdaptBuf, Design::InitBuf, Design::Ideal};

    if (j.contains("seeds")) {
        const auto& js = j.at("seeds");
        if (js.is_array()) {
            for (const auto& s : js) cfg.seeds.push_back(s.get<std::uint64_t>());
        } else {
            const std::uint64_t base = js.value("base", std::uint64_t{1});
            const int count = js.value("count", 50);
            for (int i = 0; i < count; ++i) cfg.seeds.push_back(base + i);
        }
    }

    if (j.contains("partition")) {
        const auto& jp = j.at("partition");
        cfg.nodes = jp.value("nodes", 2);
        if (jp.contains("capacities"))
            cfg.capacities = jp.at("capacities").get<std::vector<int>>();
        cfg.partition_seed = jp.value("seed", std::uint64_t{7});
        cfg.fm_starts = jp.value("starts", 16);
        cfg.assignment_file = jp.value("file", std::string{});
    }

    SimConfig& sim = cfg.sim;
    if (j.contains("entnet")) {
        const auto& je = j.at("entnet");
        EntParams& e = sim.ent;
        if (je.contains("p_succ")) e.p_succ_override = je.at("p_succ").get<double>();
        if (je.contains("p_succ_override")) e.p_succ_override = je.at("p_succ_override").get<double>();
        e.p_pq1 = je.value("p_pq1", e.p_pq1);
        e.p_pq2 = je.value("p_pq2", e.p_pq2);
        e.len1_km = je.value("len1_km", e.len1_km);
        e.len2_km = je.value("len2_km", e.len2_km);
        e.att_len_km = je.value("att_len_km", e.att_len_km);
        e.p_bsm = je.value("p_bsm", e.p_bsm);
        e.t_eg = je.value("t_eg", e.t_eg);
        e.n_comm_pairs = je.value("n_comm_pairs", e.n_comm_pairs);
        e.n_buffer_pairs = je.value("n_buffer_pairs", e.n_buffer_pairs);
        e.subgroups = je.value("subgroups", e.subgroups);
        if (je.contains("cutoff") && !je.at("cutoff").is_null())
            e.cutoff = je.at("cutoff").get<double>();
    }
    if (j.contains("noise")) {
        const auto& jn = j.at("noise");
        NoiseParams& n = sim.noise;
        n.kappa = jn.value("kappa", n.kappa);
        n.f_1q = jn.value("f_1q", n.f_1q);
        n.f_cnot = jn.value("f_cnot", n.f_cnot);
        n.f_meas = jn.value("f_meas", n.f_meas);
        n.f_epr = jn.value("f_epr", n.f_epr);
    }
    if (j.contains("engine")) {
        const auto& jg = j.at("engine");
        sim.lat.t_1q = jg.value("t_1q", sim.lat.t_1q);
        sim.lat.t_cnot = jg.value("t_cnot", sim.lat.t_cnot);
        sim.lat.t_meas = jg.value("t_meas", sim.lat.t_meas);
        sim.lat.t_epr = jg.value("t_epr", sim.lat.t_epr);
        sim.t_remote_overhead = jg.value("t_remote_overhead", sim.t_remote_overhead);
        sim.t_grant = jg.value("t_grant", sim.t_grant);
        sim.swap_cnots = jg.value("swap_cnots", sim.swap_cnots);
        sim.async_warm_start = jg.value("async_warm_start", sim.async_warm_start);
        sim.runs = jg.value("runs", sim.runs);
        if (jg.contains("idle_mode")) {
            const std::string mode = jg.at("idle_mode").get<std::string>();
            if (mode == "per_qubit") sim.idle_mode = IdleMode::PerQubit;
            else if (mode == "per_circuit") sim.idle_mode = IdleMode::PerCircuit;
            else throw std::runtime_error("config: unknown idle_mode '" + mode + "'");
        }
        if (jg.contains("original_mode")) {
            const std::string mode = jg.at("original_mode").get<std::string>();
            if (mode == "on_demand") sim.original_mode = OriginalMode::OnDemand;
            else if (mode == "hold") sim.original_mode = OriginalMode::Hold;
            else throw std::runtime_error("config: unknown original_mode '" + mode + "'");
        }
        // Table row "EPR pair preparation" doubles as the attempt cycle time
        // unless entnet overrides it separately.
        if (jg.contains("t_epr") && !(j.contains("entnet") && j.at("entnet").contains("t_eg")))
            sim.ent.t_eg = sim.lat.t_epr;
    }
    if (cfg.seeds.empty())
        for (int i = 0; i < std::max(1, sim.runs); ++i) cfg.seeds.push_back(1 + i);
    sim.ent.validate();
    return cfg;
}

}  // namespace dqc
