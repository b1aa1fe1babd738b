#include <cstdio>
#include <cstdlib>

#include "doctest.h"
#include "dqc/benchgen.hpp"
#include "dqc/dag.hpp"
#include "dqc/engine.hpp"

using namespace dqc;

namespace {

DistributedCircuit one_remote_cnot() {
    Circuit c(2);
    c.add(Gate::cnot(0, 1));
    Assignment a;
    a.capacities = {1, 1};
    a.node_of = {0, 1};
    return annotate_remote(c, a);
}

DistributedCircuit halves(const Circuit& c) {
    Assignment a;
    a.capacities = {(c.n_qubits + 1) / 2, c.n_qubits / 2};
    a.node_of.resize(c.n_qubits);
    for (int q = 0; q < c.n_qubits; ++q) a.node_of[q] = q < (c.n_qubits + 1) / 2 ? 0 : 1;
    return annotate_remote(c, a);
}

SimConfig perfect_link_config(Design design) {
    SimConfig cfg;
    cfg.design = design;
    cfg.ent.p_succ_override = 1.0;
    cfg.ent.n_comm_pairs = 1;
    cfg.ent.n_buffer_pairs = 2;
    return cfg;
}

}  // namespace

TEST_CASE("empty circuit runs to depth zero") {
    DistributedCircuit dc;
    dc.circuit = Circuit(2);
    dc.assignment.capacities = {1, 1};
    dc.assignment.node_of = {0, 1};
    dc.remote.clear();
    SimConfig cfg;
    cfg.design = Design::SyncBuf;
    const SimResult r = run(dc, cfg);
    CHECK(r.depth == 0.0);
    CHECK(r.fidelity == 1.0);
}

TEST_CASE("terminal measurement is charged in depth and fidelity") {
    Circuit c(1);
    c.add(Gate::h(0));
    c.add(Gate::measure(0));
    DistributedCircuit dc;
    dc.circuit = c;
    dc.assignment.capacities = {1};
    dc.assignment.node_of = {0};
    dc.remote.assign(2, false);
    SimConfig cfg;
    cfg.design = Design::Ideal;
    const SimResult r = run(dc, cfg);
    CHECK(r.depth == doctest::Approx(0.1 + 5.0).epsilon(1e-12));
    CHECK(r.fidelity == doctest::Approx(cfg.noise.f_1q * cfg.noise.f_meas).epsilon(1e-12));
}

TEST_CASE("ideal depth examples") {
    Circuit one(2);
    one.add(Gate::cnot(0, 1));
    CHECK(ideal_depth(one) == 1.0);

    Circuit two(2);
    two.add(Gate::cnot(0, 1));
    two.add(Gate::cnot(0, 1));
    CHECK(ideal_depth(two) == 2.0);
}

TEST_CASE("qft-32 ideal depth agrees with the dag longest-path oracle") {
    const Circuit qft = gen_qft(32);
    const double scan = ideal_depth(qft);
    const GateDag dag = GateDag::build(qft);
    const double longest = dag.weighted_makespan([&qft](int i) {
        const Gate& g = qft.gates[i];
        return g.arity() == 2 ? 1.0 : 0.1;
    });
    CHECK(scan == doctest::Approx(longest).epsilon(1e-12));
    // H(0), a 61-gate CPHASE chain, and the closing H(31).
    CHECK(scan == doctest::Approx(61.2).epsilon(1e-12));
}

TEST_CASE("ideal design reproduces the ideal depth with local fidelities only") {
    for (const Circuit& c : {gen_tlim(8, 2), gen_qft(6), gen_qaoa_maxcut(8, 4, 1, 3)}) {
        const DistributedCircuit dc = halves(c);
        SimConfig cfg;
        cfg.design = Design::Ideal;
        const SimResult r = run(dc, cfg);
        CHECK(r.depth == doctest::Approx(ideal_depth(c)).epsilon(1e-12));
        CHECK(r.links.generated == 0);
        CHECK(r.remote_gates == 0);
        // Product of local gate fidelities and idle decay only.
        double product = 1.0;
        for (const Gate& g : c.gates)
            product *= (g.arity() == 2) ? cfg.noise.f_cnot : cfg.noise.f_1q;
        CHECK(r.fidelity <= product + 1e-12);
        CHECK(r.fidelity > 0.0);
    }
}

TEST_CASE("one remote cnot with a deterministic link") {
    SUBCASE("sync_buf waits for the first heralding") {
        const SimResult r = run(one_remote_cnot(), perfect_link_config(Design::SyncBuf));
        CHECK(r.depth == doctest::Approx(16.1).epsilon(1e-12));
        CHECK(r.links.consumed == 1);
    }
    SUBCASE("init_buf starts immediately from the prefilled pool") {
        const SimResult r = run(one_remote_cnot(), perfect_link_config(Design::InitBuf));
        CHECK(r.depth == doctest::Approx(6.1).epsilon(1e-12));
    }
}

TEST_CASE("two remote gates share the link supply in ready order") {
    Circuit c(4);
    c.add(Gate::cnot(0, 1));
    c.add(Gate::cnot(2, 3));
    Assignment a;
    a.capacities = {2, 2};
    a.node_of = {0, 1, 0, 1};
    const DistributedCircuit dc = annotate_remote(c, a);
    REQUIRE(dc.remote_count == 2);

    SimConfig cfg = perfect_link_config(Design::SyncBuf);
    SUBCASE("one pair serializes on the heralding cadence") {
        const SimResult r = run(dc, cfg);
        CHECK(r.depth == doctest::Approx(26.1).epsilon(1e-12));  // links at 10 and 20
    }
    SUBCASE("two pairs serve both gates from the first burst") {
        cfg.ent.n_comm_pairs = 2;
        const SimResult r = run(dc, cfg);
        CHECK(r.depth == doctest::Approx(16.1).epsilon(1e-12));
    }
}

TEST_CASE("cutoff forces a fresh link when the stored one expires") {
    // q0 stays busy with local work until t = 16; the link heralded at 10
    // expires at 15 under a cutoff of 5, so the remote gate runs on the next
    // heralding at 20. Without the cutoff it consumes the aged link at 16.
    Circuit c(3);
    for (int i = 0; i < 16; ++i) c.add(Gate::cnot(0, 2));
    c.add(Gate::cnot(0, 1));
    Assignment a;
    a.capacities = {2, 1};
    a.node_of = {0, 1, 0};
    const DistributedCircuit dc = annotate_remote(c, a);
    REQUIRE(dc.remote_count == 1);

    SimConfig cfg = perfect_link_config(Design::SyncBuf);
    const SimResult aged = run(dc, cfg);
    CHECK(aged.depth == doctest::Approx(16.0 + 6.1).epsilon(1e-12));
    CHECK(aged.links.discarded == 0);

    cfg.ent.cutoff = 5.0;
    const SimResult fresh = run(dc, cfg);
    CHECK(fresh.depth == doctest::Approx(20.0 + 6.1).epsilon(1e-12));
    CHECK(fresh.links.discarded >= 1);
    // The fresh link is younger, so the estimated fidelity is higher.
    CHECK(fresh.fidelity > aged.fidelity);
}

TEST_CASE("deadlock is detected when entanglement can never arrive") {
    SimConfig cfg = perfect_link_config(Design::SyncBuf);
    cfg.ent.p_succ_override = 0.0;
    CHECK_THROWS_AS(run(one_remote_cnot(), cfg), SimError);
}

TEST_CASE("conservation and remote accounting per design") {
    const Circuit circ = gen_qaoa_maxcut(8, 4, 1, 5);
    const DistributedCircuit dc = halves(circ);
    for (const Design design :
         {Design::Original, Design::SyncBuf, Design::AsyncBuf, Design::AdaptBuf, Design::InitBuf}) {
        SimConfig cfg;
        cfg.design = design;
        cfg.ent.p_succ_override = 0.4;
        cfg.ent.n_comm_pairs = 4;
        cfg.ent.n_buffer_pairs = 4;
        for (const std::uint64_t seed : {1ULL, 7ULL, 42ULL}) {
            const EngineContext ctx = EngineContext::prepare(dc, cfg);
            const SimResult r = run(dc, cfg, ctx, seed);
            CHECK(r.links.consumed == dc.remote_count);
            CHECK(r.links.generated >= r.links.consumed);  // rest sit in the buffer
            CHECK(r.links.generated - r.links.consumed - r.links.discarded >= 0);
            long waits = 0;
            for (const auto& [bucket, count] : r.wait_histogram) waits += count;
            CHECK(waits == dc.remote_count);
        }
    }
}

TEST_CASE("depth never beats ideal for order-preserving designs") {
    const Circuit circ = gen_tlim(8, 3);
    const DistributedCircuit dc = halves(circ);
    const double ideal = ideal_depth(circ);
    for (const Design design :
         {Design::Original, Design::SyncBuf, Design::AsyncBuf, Design::Ideal}) {
        SimConfig cfg;
        cfg.design = design;
        cfg.ent.p_succ_override = 0.5;
        cfg.ent.n_comm_pairs = 3;
        cfg.ent.n_buffer_pairs = 3;
        for (const std::uint64_t seed : {2ULL, 9ULL}) {
            const EngineContext ctx = EngineContext::prepare(dc, cfg);
            CHECK(run(dc, cfg, ctx, seed).depth >= ideal - 1e-9);
        }
    }
}

TEST_CASE("runs are deterministic in the seed") {
    const Circuit circ = gen_qaoa_maxcut(8, 4, 1, 2);
    const DistributedCircuit dc = halves(circ);
    SimConfig cfg;
    cfg.design = Design::AdaptBuf;
    cfg.ent.p_succ_override = 0.4;
    cfg.ent.n_comm_pairs = 3;
    cfg.ent.n_buffer_pairs = 3;
    const EngineContext ctx = EngineContext::prepare(dc, cfg);
    const SimResult a = run(dc, cfg, ctx, 77);
    const SimResult b = run(dc, cfg, ctx, 77);
    CHECK(a.depth == b.depth);
    CHECK(a.fidelity == b.fidelity);
    CHECK(a.links.generated == b.links.generated);
    const SimResult c = run(dc, cfg, ctx, 78);
    CHECK((c.depth != a.depth || c.fidelity != a.fidelity));
}

TEST_CASE("event log replay reproduces depth and fidelity") {
    const Circuit circ = gen_tlim(6, 4);
    const DistributedCircuit dc = halves(circ);
    SimConfig cfg;
    cfg.design = Design::AsyncBuf;
    cfg.ent.p_succ_override = 0.4;
    cfg.ent.n_comm_pairs = 3;
    cfg.ent.n_buffer_pairs = 3;
    EventLog log;
    const EngineContext ctx = EngineContext::prepare(dc, cfg);
    const SimResult r = run(dc, cfg, ctx, 5, &log);

    const std::string path = "/tmp/dqc_test_events.log";
    write_event_log(log, path);
    const ReplaySummary replay = replay_event_log(path);
    CHECK(replay.depth == r.depth);
    CHECK(replay.fidelity == r.fidelity);
    std::remove(path.c_str());
}

TEST_CASE("sweep aggregates and respects worker-count independence") {
    const Circuit circ = gen_qaoa_maxcut(8, 4, 1, 4);
    const DistributedCircuit dc = halves(circ);
    SimConfig cfg;
    cfg.design = Design::SyncBuf;
    cfg.ent.p_succ_override = 0.4;
    cfg.ent.n_comm_pairs = 3;
    cfg.ent.n_buffer_pairs = 3;
    const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8};

    const SweepReport serial = sweep(dc, cfg, seeds);
    setenv("DQC_THREADS", "3", 1);
    const SweepReport parallel = sweep(dc, cfg, seeds);
    unsetenv("DQC_THREADS");

    REQUIRE(serial.results.size() == parallel.results.size());
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        CHECK(serial.results[i].depth == parallel.results[i].depth);
        CHECK(serial.results[i].fidelity == parallel.results[i].fidelity);
    }
    SUBCASE("single seed aggregate equals the run") {
        const SweepReport one = sweep(dc, cfg, {42});
        CHECK(one.mean_depth == one.results[0].depth);
        CHECK(one.stddev_depth == 0.0);
    }
}

TEST_CASE("swapping into the buffer costs latency and fidelity when charged") {
    SimConfig cheap = perfect_link_config(Design::SyncBuf);
    SimConfig charged = perfect_link_config(Design::SyncBuf);
    charged.swap_cnots = 3;
    const SimResult a = run(one_remote_cnot(), cheap);
    const SimResult b = run(one_remote_cnot(), charged);
    CHECK(b.depth > a.depth);
    CHECK(b.fidelity < a.fidelity);
}

TEST_CASE("more communication pairs never slow a buffered design down") {
    const Circuit circ = gen_qaoa_maxcut(12, 4, 1, 9);
    const DistributedCircuit dc = halves(circ);
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
    for (const Design design : {Design::SyncBuf, Design::AsyncBuf, Design::AdaptBuf}) {
        double prev = 1e100;
        for (const int pairs : {2, 4, 8}) {
            SimConfig cfg;
            cfg.design = design;
            cfg.ent.p_succ_override = 0.4;
            cfg.ent.n_comm_pairs = pairs;
            cfg.ent.n_buffer_pairs = 4;
            const double mean = sweep(dc, cfg, seeds).mean_depth;
            CHECK(mean <= prev + 1e-9);
            prev = mean;
        }
    }
}

TEST_CASE("ample deterministic links keep adapt_buf near the remote-aware ideal") {
    // With p = 1 and more pairs than concurrent demand, every remote gate
    // is served from stock; the depth can only exceed a list schedule that
    // charges remote gates their teleportation latency by the first-link
    // wait and handoff slack.
    const Circuit circ = gen_qaoa_maxcut(12, 4, 1, 9);
    const DistributedCircuit dc = halves(circ);
    SimConfig cfg;
    cfg.design = Design::AdaptBuf;
    cfg.ent.p_succ_override = 1.0;
    cfg.ent.n_comm_pairs = 16;
    cfg.ent.n_buffer_pairs = 16;

    std::vector<double> qubit_free(circ.n_qubits, 0.0);
    double remote_aware_ideal = 0.0;
    for (std::size_t i = 0; i < circ.gates.size(); ++i) {
        const Gate& g = circ.gates[i];
        double start = 0.0;
        for (int k = 0; k < g.arity(); ++k) start = std::max(start, qubit_free[g.qubits[k]]);
        const double end = start + cfg.gate_latency(g, dc.remote[i]);
        for (int k = 0; k < g.arity(); ++k) qubit_free[g.qubits[k]] = end;
        remote_aware_ideal = std::max(remote_aware_ideal, end);
    }

    const EngineContext ctx = EngineContext::prepare(dc, cfg);
    const SimResult r = run(dc, cfg, ctx, 13);
    CHECK(r.depth <= remote_aware_ideal + cfg.ent.t_eg +
                         cfg.t_grant * static_cast<double>(dc.remote_count) + 1e-9);
}

TEST_CASE("odd configuration corners run to completion with invariants intact") {
    const Circuit circ = gen_qft(8);
    const DistributedCircuit dc = halves(circ);
    for (const Design design : {Design::Original, Design::SyncBuf, Design::AsyncBuf,
                                Design::AdaptBuf, Design::InitBuf}) {
        for (const double p : {0.05, 0.4, 1.0}) {
            for (const int pairs : {1, 3}) {
                SimConfig cfg;
                cfg.design = design;
                cfg.ent.p_succ_override = p;
                cfg.ent.n_comm_pairs = pairs;
                cfg.ent.n_buffer_pairs = pairs;
                cfg.ent.subgroups = std::min(pairs, 3);  // fractional offsets
                cfg.ent.cutoff = 18.0;
                cfg.swap_cnots = (pairs == 3) ? 3 : 0;
                cfg.original_mode =
                    (pairs == 1) ? OriginalMode::Hold : OriginalMode::OnDemand;
                const EngineContext ctx = EngineContext::prepare(dc, cfg);
                const SimResult r = run(dc, cfg, ctx, 31);
                CHECK(r.links.consumed == dc.remote_count);
                CHECK(r.fidelity > 0.0);
                CHECK(r.fidelity <= 1.0);
                CHECK(r.depth > 0.0);
            }
        }
    }
}

TEST_CASE("adaptive designs record segment policies") {
    const Circuit circ = gen_qaoa_maxcut(8, 4, 2, 6);
    const DistributedCircuit dc = halves(circ);
    SimConfig cfg;
    cfg.design = Design::AdaptBuf;
    cfg.ent.p_succ_override = 0.4;
    cfg.ent.n_comm_pairs = 4;
    cfg.ent.n_buffer_pairs = 4;
    const EngineContext ctx = EngineContext::prepare(dc, cfg);
    const SimResult r = run(dc, cfg, ctx, 3);
    const long total = r.policy_counts[0] + r.policy_counts[1] + r.policy_counts[2];
    CHECK(total == static_cast<long>(ctx.variants.segments.size()));
}
