/** \file
 * Discrete-event executor coupling the scheduler, entanglement service, and
 * noise models across the six architecture designs, plus the seeded sweep
 * driver and the event-log schema.
 *
 * One run is a single-threaded deterministic event loop: gates dispatch when
 * their dependency-queue fronts clear and their qubits free up; a remote
 * gate additionally consumes one buffered link (FIFO) or waits. Sweeps fan
 * runs out across worker threads; workers share only immutable inputs.
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dqc/entnet.hpp"
#include "dqc/noise.hpp"
#include "dqc/partition.hpp"
#include "dqc/scheduler.hpp"

namespace dqc {

enum class Design { Original, SyncBuf, AsyncBuf, AdaptBuf, InitBuf, Ideal };

const char* design_name(Design d);
Design design_from_string(const std::string& s);

enum class IdleMode { PerQubit, PerCircuit };
enum class OriginalMode { OnDemand, Hold };

struct Latencies {
    double t_1q = 0.1;
    double t_cnot = 1.0;
    double t_meas = 5.0;
    double t_epr = 10.0;  // EPR pair preparation == attempt cycle time
};

struct SimConfig {
    Design design = Design::SyncBuf;
    EntParams ent;
    NoiseParams noise;
    Latencies lat;
    // Execution latency of one teleported gate once its link is available
    // (local CNOTs on both sides in parallel, measurements in parallel,
    // corrections in parallel).
    double t_remote_overhead = 6.1;
    // Classical matching latency between consecutive link-to-gate handoffs;
    // links heralded in the same burst are handed out one at a time.
    double t_grant = 0.0;
    IdleMode idle_mode = IdleMode::PerQubit;
    OriginalMode original_mode = OriginalMode::OnDemand;
    // Treat asynchronous generation as an always-on background service whose
    // first heraldings land on the sub-group phases right from t = 0.
    bool async_warm_start = true;
    int swap_cnots = 0;  // 0 or 3 local CNOTs charged per comm->buffer swap
    std::uint64_t seed = 1;
    int runs = 50;

    double gate_latency(const Gate& g, bool remote) const;
};

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GateEvent {
    int gate = -1;
    GateKind kind = GateKind::H;
    bool remote = false;
    int q0 = -1;
    int q1 = -1;
    double start = 0.0;
    double end = 0.0;
    double fidelity = 1.0;
    double link_age = 0.0;  // remote gates only
};

struct SegmentEvent {
    double t = 0.0;
    int segment = 0;
    Policy policy = Policy::Original;
    int links_available = 0;
};

struct EventLog {
    int n_qubits = 0;
    double kappa = 0.0;
    IdleMode idle_mode = IdleMode::PerQubit;
    std::vector<GateEvent> gates;
    std::vector<EntEvent> links;
    std::vector<SegmentEvent> segments;
};

/// Product of every logged gate fidelity and the idle decoherence factor
/// (per data qubit between its first and last operation, or once per
/// circuit, per the log's idle mode).
double accumulate_fidelity(const EventLog& log);

struct SimResult {
    std::string design;
    std::uint64_t seed = 0;
    double depth = 0.0;
    double fidelity = 1.0;
    PoolStats links;
    long remote_gates = 0;
    std::array<long, 3> policy_counts{0, 0, 0};  // segments run per policy
    std::map<int, long> wait_histogram;          // floor(remote wait) -> count
};

/// ASAP list-scheduling makespan with all two-qubit gates local.
double ideal_depth(const Circuit& c, const Latencies& lat = {});

/// Immutable per-(circuit, config) state shared by every seed of a sweep.
struct EngineContext {
    RemoteFidelityTable remote_fid;
    VariantTable variants;  // adaptive designs only
    int m = 1;
    bool adaptive = false;

    static EngineContext prepare(const DistributedCircuit& dc, const SimConfig& cfg);
};

SimResult run(const DistributedCircuit& dc, const SimConfig& cfg, const EngineContext& ctx,
              std::uint64_t seed, EventLog* log_out = nullptr);

/// Convenience single-run entry point; builds the context internally.
SimResult run(const DistributedCircuit& dc, const SimConfig& cfg, EventLog* log_out = nullptr);

struct SweepReport {
    std::vector<SimResult> results;
    double mean_depth = 0.0;
    double stddev_depth = 0.0;
    double mean_fidelity = 0.0;
    double stddev_fidelity = 0.0;
};

/// Runs every seed (worker count from DQC_THREADS, default 1); results are
/// ordered by seed position regardless of scheduling.
SweepReport sweep(const DistributedCircuit& dc, const SimConfig& cfg,
                  const std::vector<std::uint64_t>& seeds);

void write_event_log(const EventLog& log, const std::string& path);

struct ReplaySummary {
    double depth = 0.0;
    double fidelity = 1.0;
};

/// Recomputes depth and fidelity from a serialized event log.
ReplaySummary replay_event_log(const std::string& path);

std::string result_to_json(const SimResult& r);

}  // namespace dqc
