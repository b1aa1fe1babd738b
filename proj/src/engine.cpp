#include "dqc/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <queue>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace dqc {

const char* design_name(Design d) {
    switch (d) {
        case Design::Original: return "original";
        case Design::SyncBuf: return "sync_buf";
        case Design::AsyncBuf: return "async_buf";
        case Design::AdaptBuf: return "adapt_buf";
        case Design::InitBuf: return "init_buf";
        case Design::Ideal: return "ideal";
    }
    return "?";
}

Design design_from_string(const std::string& s) {
    if (s == "original") return Design::Original;
    if (s == "sync_buf") return Design::SyncBuf;
    if (s == "async_buf") return Design::AsyncBuf;
    if (s == "adapt_buf") return Design::AdaptBuf;
    if (s == "init_buf") return Design::InitBuf;
    if (s == "ideal") return Design::Ideal;
    throw std::invalid_argument("unknown design '" + s + "'");
}

double SimConfig::gate_latency(const Gate& g, bool remote) const {
    if (remote) return t_remote_overhead;
    if (g.kind == GateKind::MEASURE) return lat.t_meas;
    return (g.arity() == 2) ? lat.t_cnot : lat.t_1q;
}

double ideal_depth(const Circuit& c, const Latencies& lat) {
    std::vector<double> qubit_free(c.n_qubits, 0.0);
    double depth = 0.0;
    for (const Gate& g : c.gates) {
        double start = 0.0;
        for (int k = 0; k < g.arity(); ++k) start = std::max(start, qubit_free[g.qubits[k]]);
        const double dur =
            (g.kind == GateKind::MEASURE) ? lat.t_meas : ((g.arity() == 2) ? lat.t_cnot : lat.t_1q);
        const double end = start + dur;
        for (int k = 0; k < g.arity(); ++k) qubit_free[g.qubits[k]] = end;
        depth = std::max(depth, end);
    }
    return depth;
}

double accumulate_fidelity(const EventLog& log) {
    double f = 1.0;
    for (const GateEvent& e : log.gates) f *= e.fidelity;
    if (log.idle_mode == IdleMode::PerCircuit) {
        double depth = 0.0;
        for (const GateEvent& e : log.gates) depth = std::max(depth, e.end);
        return f * idle_factor(log.kappa, depth);
    }
    std::vector<double> first(log.n_qubits, -1.0), last(log.n_qubits, 0.0), busy(log.n_qubits, 0.0);
    for (const GateEvent& e : log.gates) {
        const int qs[2] = {e.q0, e.q1};
        for (int q : qs) {
            if (q < 0) continue;
            if (first[q] < 0 || e.start < first[q]) first[q] = e.start;
            last[q] = std::max(last[q], e.end);
            busy[q] += e.end - e.start;
        }
    }
    for (int q = 0; q < log.n_qubits; ++q) {
        if (first[q] < 0) continue;  // untouched qubit never initialized
        const double idle = (last[q] - first[q]) - busy[q];
        f *= idle_factor(log.kappa, std::max(0.0, idle));
    }
    return f;
}

EngineContext EngineContext::prepare(const DistributedCircuit& dc, const SimConfig& cfg) {
    EngineContext ctx;
    ctx.adaptive = cfg.design == Design::AdaptBuf || cfg.design == Design::InitBuf;
    ctx.m = segment_size(std::max(1, cfg.ent.n_comm_pairs), attempt_success_prob(cfg.ent));
    if (ctx.adaptive) ctx.variants = VariantTable::compile(dc, ctx.m);
    if (cfg.design != Design::Ideal) {
        double f0 = cfg.noise.f_epr;
        if (cfg.swap_cnots == 3) f0 *= std::pow(cfg.noise.f_cnot, 6);
        ctx.remote_fid = RemoteFidelityTable(f0, cfg.noise.kappa, cfg.noise);
    }
    return ctx;
}

namespace {

struct ServiceSetup {
    bool uses_links = false;
    ServiceConfig cfg;
};

ServiceSetup make_service_setup(const SimConfig& cfg) {
    ServiceSetup s;
    s.cfg.params = cfg.ent;
    s.cfg.link_f0 = cfg.noise.f_epr;
    if (cfg.swap_cnots == 3) {
        // Comm->buffer swap charged: three local CNOTs per side in parallel
        // delay every delivery, and the stored fidelity drops accordingly.
        s.cfg.link_f0 *= std::pow(cfg.noise.f_cnot, 6);
        s.cfg.post_delay = 3.0 * cfg.lat.t_cnot;
    }
    switch (cfg.design) {
        case Design::Ideal:
            return s;
        case Design::Original:
            s.uses_links = true;
            s.cfg.params.mode = AttemptMode::Sync;
            s.cfg.service = (cfg.original_mode == OriginalMode::OnDemand) ? ServiceMode::OnDemand
                                                                          : ServiceMode::Hold;
            break;
        case Design::SyncBuf:
            s.uses_links = true;
            s.cfg.params.mode = AttemptMode::Sync;
            s.cfg.service = ServiceMode::Scheduled;
            break;
        case Design::AsyncBuf:
        case Design::AdaptBuf:
        case Design::InitBuf:
            s.uses_links = true;
            s.cfg.params.mode = AttemptMode::Async;
            s.cfg.service = ServiceMode::Scheduled;
            s.cfg.warm_start = cfg.async_warm_start;
            s.cfg.prefill = cfg.design == Design::InitBuf;
            break;
    }
    return s;
}

// One deterministic run. Every gate sits in the FIFO queue of each of its
// qubits; a gate dispatches when it heads all of them. For adaptive designs
// a segment's variant order is resolved lazily, the first time one of its
// gates reaches the head of every queue it occupies: that is the moment the
// controller turns to the segment, samples the buffered-link count e, and
// fixes the order.
class Executor {
  public:
    Executor(const DistributedCircuit& dc, const SimConfig& cfg, const EngineContext& ctx,
             std::uint64_t seed)
        : dc_(dc),
          cfg_(cfg),
          ctx_(ctx),
          setup_(make_service_setup(cfg)),
          n_gates_(static_cast<int>(dc.circuit.gates.size())),
          qubit_free_(dc.circuit.n_qubits, 0.0),
          queues_(dc.circuit.n_qubits),
          state_(n_gates_, State::Pending),
          ready_time_(n_gates_, 0.0),
          segment_of_(n_gates_, 0) {
        log_.n_qubits = dc.circuit.n_qubits;
        log_.kappa = cfg.noise.kappa;
        log_.idle_mode = cfg.idle_mode;
        if (setup_.uses_links) service_ = std::make_unique<EntService>(setup_.cfg, seed);

        if (ctx_.adaptive) {
            const auto& segments = ctx_.variants.segments;
            resolved_.assign(segments.size(), false);
            for (std::size_t s = 0; s < segments.size(); ++s)
                for (int g = segments[s].begin; g < segments[s].end; ++g)
                    segment_of_[g] = static_cast<int>(s);
        } else {
            resolved_.assign(1, true);
        }

        for (int g = 0; g < n_gates_; ++g) {
            const Gate& gate = dc_.circuit.gates[g];
            for (int k = 0; k < gate.arity(); ++k) queues_[gate.qubits[k]].push_back(g);
        }
    }

    SimResult execute(std::uint64_t seed) {
        for (int g = 0; g < n_gates_; ++g) maybe_schedule(g, 0.0);
        event_loop();
        if (service_ && !service_->pool().conservation_ok())
            throw SimError("engine: link conservation violated");

        SimResult r;
        r.design = design_name(cfg_.design);
        r.seed = seed;
        r.depth = depth_;
        r.fidelity = accumulate_fidelity(log_);
        r.remote_gates = setup_.uses_links ? dc_.remote_count : 0;
        if (service_) r.links = service_->pool().stats();
        r.policy_counts = policy_counts_;
        r.wait_histogram = wait_hist_;
        return r;
    }

    EventLog take_log() { return std::move(log_); }

  private:
    enum class State { Pending, Scheduled, Waiting, Started };

    struct TryStart {
        double t;
        int gate;
        bool operator>(const TryStart& o) const {
            return t > o.t || (t == o.t && gate > o.gate);
        }
    };

    bool is_remote(int g) const { return setup_.uses_links && dc_.remote[g]; }

    // Fix the segment's gate order from the current buffer occupancy and
    // re-rank its pending entries inside every qubit queue.
    void resolve_segment(int s, double now) {
        resolved_[s] = true;
        std::vector<EntEvent> ent_events;
        const int e = service_ ? service_->pool_size(now, ent_events) : 0;
        append_link_events(ent_events);
        const Policy policy = select_policy(e, ctx_.m);
        ++policy_counts_[static_cast<int>(policy)];
        log_.segments.push_back({now, s, policy, e});

        const auto& order = ctx_.variants.order(s, policy);
        std::vector<int> rank(n_gates_, 0);
        for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);

        for (auto& queue : queues_) {
            std::vector<std::size_t> positions;
            std::vector<int> members;
            for (std::size_t i = 0; i < queue.size(); ++i) {
                if (segment_of_[queue[i]] == s) {
                    positions.push_back(i);
                    members.push_back(queue[i]);
                }
            }
            std::sort(members.begin(), members.end(),
                      [&rank](int a, int b) { return rank[a] < rank[b]; });
            for (std::size_t i = 0; i < positions.size(); ++i) queue[positions[i]] = members[i];
        }
        // The reorder may have promoted other gates to queue fronts.
        for (const auto& queue : queues_)
            if (!queue.empty()) maybe_schedule(queue.front(), now);
    }

    // Schedule the gate's dispatch once it heads all of its qubit queues.
    void maybe_schedule(int g, double now) {
        if (state_[g] != State::Pending) return;
        const Gate& gate = dc_.circuit.gates[g];
        for (int k = 0; k < gate.arity(); ++k) {
            const int q = gate.qubits[k];
            if (queues_[q].empty() || queues_[q].front() != g) return;
        }
        if (!resolved_[segment_of_[g]]) {
            resolve_segment(segment_of_[g], now);
            if (state_[g] != State::Pending) return;
            for (int k = 0; k < gate.arity(); ++k) {
                const int q = gate.qubits[k];
                if (queues_[q].empty() || queues_[q].front() != g) return;
            }
        }
        double t_ready = now;
        for (int k = 0; k < gate.arity(); ++k)
            t_ready = std::max(t_ready, qubit_free_[gate.qubits[k]]);
        state_[g] = State::Scheduled;
        ready_time_[g] = t_ready;
        try_heap_.push({t_ready, g});
    }

    void event_loop() {
        long guard = 0;
        while (started_ < n_gates_) {
            if (++guard > 200'000'000L)
                throw SimError("engine: event budget exhausted without completing the circuit");
            const double t_gate = try_heap_.empty() ? kNoEvent : try_heap_.top().t;
            const double t_svc = service_ ? service_->next_event_time() : kNoEvent;

            if (t_svc < t_gate || (t_svc == t_gate && t_svc != kNoEvent)) {
                process_service_event(t_svc);
                continue;
            }
            if (t_gate == kNoEvent) {
                // Gates remain but nothing is scheduled: only waiting remote
                // gates without any deliverable link can be left.
                throw SimError(
                    "engine: deadlock, remote gates pending with no entanglement events");
            }
            const TryStart ev = try_heap_.top();
            try_heap_.pop();
            dispatch(ev.gate, ev.t);
        }
    }

    void process_service_event(double t) {
        std::vector<EntEvent> events;
        const auto delivered = service_->process_next(events);
        append_link_events(events);
        if (delivered) {
            // On-demand success is bound to the longest-waiting gate.
            grant_next_waiter(t, *delivered);
            return;
        }
        drain_pool(t);
    }

    void drain_pool(double t) {
        while (!waitq_.empty() && service_->pool().size() > 0) {
            std::vector<EntEvent> events;
            auto link = service_->acquire(t, events);
            append_link_events(events);
            if (!link) break;  // everything expired at this instant
            grant_next_waiter(t, *link);
        }
    }

    // Link-to-gate handoffs leave the buffer through one matching
    // controller, one every t_grant. The bufferless original design
    // consumes straight from the communication qubits and skips matching.
    double grant_time(double t) {
        if (setup_.cfg.service == ServiceMode::OnDemand) return t;
        const double when = std::max(t, grant_free_);
        grant_free_ = when + cfg_.t_grant;
        return when;
    }

    void grant_next_waiter(double t, const EntLink& link) {
        if (waitq_.empty()) throw SimError("engine: link granted with no waiting gate");
        const int g = waitq_.front();
        waitq_.pop_front();
        update_demand(t);
        start_gate(g, grant_time(t), &link);
    }

    void dispatch(int g, double t) {
        if (state_[g] != State::Scheduled) throw SimError("engine: double dispatch");
        if (is_remote(g)) {
            std::vector<EntEvent> events;
            auto link = service_->acquire(t, events);
            append_link_events(events);
            if (link) {
                start_gate(g, grant_time(t), &*link);
            } else {
                state_[g] = State::Waiting;
                waitq_.push_back(g);
                update_demand(t);
                if (!service_->can_make_progress())
                    throw SimError("engine: deadlock, no way to generate entanglement for gate " +
                                   std::to_string(g));
            }
        } else {
            start_gate(g, t, nullptr);
        }
    }

    void start_gate(int g, double t, const EntLink* link) {
        state_[g] = State::Started;
        ++started_;
        const Gate& gate = dc_.circuit.gates[g];
        const bool remote = is_remote(g);
        const double dur = cfg_.gate_latency(gate, remote);
        const double end = t + dur;
        depth_ = std::max(depth_, end);

        GateEvent ev;
        ev.gate = g;
        ev.kind = gate.kind;
        ev.remote = remote;
        ev.q0 = gate.q0();
        ev.q1 = gate.arity() == 2 ? gate.q1() : -1;
        ev.start = t;
        ev.end = end;
        if (remote) {
            double age = std::max(0.0, t - link->created_at);
            ev.link_age = age;
            ev.fidelity = ctx_.remote_fid.lookup(age);
            const double wait = t - ready_time_[g];
            ++wait_hist_[static_cast<int>(wait)];
        } else if (gate.kind == GateKind::MEASURE) {
            ev.fidelity = cfg_.noise.f_meas;
        } else if (gate.arity() == 2) {
            ev.fidelity = cfg_.noise.f_cnot;
        } else {
            ev.fidelity = cfg_.noise.f_1q;
        }
        log_.gates.push_back(ev);

        for (int k = 0; k < gate.arity(); ++k) {
            const int q = gate.qubits[k];
            qubit_free_[q] = end;
            queues_[q].pop_front();
        }
        for (int k = 0; k < gate.arity(); ++k) {
            const int q = gate.qubits[k];
            if (!queues_[q].empty()) maybe_schedule(queues_[q].front(), t);
        }
    }

    void update_demand(double t) {
        if (service_) service_->set_demand(static_cast<int>(waitq_.size()), t);
    }

    void append_link_events(const std::vector<EntEvent>& events) {
        log_.links.insert(log_.links.end(), events.begin(), events.end());
    }

    const DistributedCircuit& dc_;
    const SimConfig& cfg_;
    const EngineContext& ctx_;
    ServiceSetup setup_;
    std::unique_ptr<EntService> service_;

    int n_gates_ = 0;
    std::vector<double> qubit_free_;
    std::vector<std::deque<int>> queues_;
    std::vector<State> state_;
    std::vector<double> ready_time_;
    std::vector<int> segment_of_;
    std::vector<bool> resolved_;
    std::priority_queue<TryStart, std::vector<TryStart>, std::greater<TryStart>> try_heap_;
    std::deque<int> waitq_;  // waiting remote gates, FIFO by (ready time, order)

    int started_ = 0;
    double depth_ = 0.0;
    double grant_free_ = 0.0;
    std::array<long, 3> policy_counts_{0, 0, 0};
    std::map<int, long> wait_hist_;
    EventLog log_;
};

}  // namespace

SimResult run(const DistributedCircuit& dc, const SimConfig& cfg, const EngineContext& ctx,
              std::uint64_t seed, EventLog* log_out) {
    dc.circuit.validate();
    Executor ex(dc, cfg, ctx, seed);
    SimResult r = ex.execute(seed);
    if (log_out) *log_out = ex.take_log();
    return r;
}

SimResult run(const DistributedCircuit& dc, const SimConfig& cfg, EventLog* log_out) {
    const EngineContext ctx = EngineContext::prepare(dc, cfg);
    return run(dc, cfg, ctx, cfg.seed, log_out);
}

SweepReport sweep(const DistributedCircuit& dc, const SimConfig& cfg,
                  const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty()) throw std::invalid_argument("sweep: need at least one seed");
    const EngineContext ctx = EngineContext::prepare(dc, cfg);

    SweepReport report;
    report.results.resize(seeds.size());

    int n_threads = 1;
    if (const char* env = std::getenv("DQC_THREADS")) n_threads = std::max(1, std::atoi(env));
    n_threads = std::min<int>(n_threads, static_cast<int>(seeds.size()));

    if (n_threads == 1) {
        for (std::size_t i = 0; i < seeds.size(); ++i)
            report.results[i] = run(dc, cfg, ctx, seeds[i]);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= seeds.size()) break;
                report.results[i] = run(dc, cfg, ctx, seeds[i]);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < n_threads; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    double sum_d = 0, sum_d2 = 0, sum_f = 0, sum_f2 = 0;
    for (const SimResult& r : report.results) {
        sum_d += r.depth;
        sum_d2 += r.depth * r.depth;
        sum_f += r.fidelity;
        sum_f2 += r.fidelity * r.fidelity;
    }
    const double n = static_cast<double>(report.results.size());
    report.mean_depth = sum_d / n;
    report.mean_fidelity = sum_f / n;
    report.stddev_depth = std::sqrt(std::max(0.0, sum_d2 / n - report.mean_depth * report.mean_depth));
    report.stddev_fidelity =
        std::sqrt(std::max(0.0, sum_f2 / n - report.mean_fidelity * report.mean_fidelity));
    return report;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* ent_event_name(EntEventKind k) {
    switch (k) {
        case EntEventKind::Success: return "link_success";
        case EntEventKind::Blocked: return "link_blocked";
        case EntEventKind::Discard: return "link_discard";
        case EntEventKind::Consume: return "link_consume";
    }
    return "?";
}

}  // namespace

void write_event_log(const EventLog& log, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "# dqc-event-log v1 n_qubits=" << log.n_qubits << " kappa=" << fmt(log.kappa)
        << " idle_mode=" << (log.idle_mode == IdleMode::PerQubit ? "per_qubit" : "per_circuit")
        << "\n";
    for (const SegmentEvent& s : log.segments)
        out << fmt(s.t) << ",segment,seg=" << s.segment << ",policy=" << policy_name(s.policy)
            << ",e=" << s.links_available << "\n";
    for (const EntEvent& e : log.links)
        out << fmt(e.t) << "," << ent_event_name(e.kind) << ",id=" << e.link_id
            << ",pair=" << e.pair << "\n";
    for (const GateEvent& g : log.gates) {
        out << fmt(g.start) << ",gate,gi=" << g.gate << ",kind=" << kind_name(g.kind)
            << ",remote=" << (g.remote ? 1 : 0) << ",q0=" << g.q0 << ",q1=" << g.q1
            << ",end=" << fmt(g.end) << ",fid=" << fmt(g.fidelity);
        if (g.remote) out << ",age=" << fmt(g.link_age);
        out << "\n";
    }
}

ReplaySummary replay_event_log(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line.rfind("# dqc-event-log v1", 0) != 0)
        throw std::runtime_error("event log: missing header");

    EventLog log;
    {
        std::istringstream hs(line.substr(2));
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "n_qubits") log.n_qubits = std::stoi(val);
            if (key == "kappa") log.kappa = std::stod(val);
            if (key == "idle_mode")
                log.idle_mode = (val == "per_circuit") ? IdleMode::PerCircuit : IdleMode::PerQubit;
        }
    }

    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');
        const double t = std::stod(cell);
        std::getline(ls, cell, ',');
        if (cell != "gate") continue;
        GateEvent g;
        g.start = t;
        while (std::getline(ls, cell, ',')) {
            const auto eq = cell.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = cell.substr(0, eq), val = cell.substr(eq + 1);
            if (key == "q0") g.q0 = std::stoi(val);
            if (key == "q1") g.q1 = std::stoi(val);
            if (key == "end") g.end = std::stod(val);
            if (key == "fid") g.fidelity = std::stod(val);
            if (key == "remote") g.remote = val == "1";
        }
        log.gates.push_back(g);
    }

    ReplaySummary s;
    for (const GateEvent& g : log.gates) s.depth = std::max(s.depth, g.end);
    s.fidelity = accumulate_fidelity(log);
    return s;
}

std::string result_to_json(const SimResult& r) {
    nlohmann::json j;
    j["design"] = r.design;
    j["seed"] = r.seed;
    j["depth"] = r.depth;
    j["fidelity"] = r.fidelity;
    j["links"] = {{"generated", r.links.generated},
                  {"consumed", r.links.consumed},
                  {"discarded", r.links.discarded},
                  {"blocked", r.links.blocked}};
    j["remote_gates"] = r.remote_gates;
    j["policy_counts"] = {{"original", r.policy_counts[0]},
                          {"asap", r.policy_counts[1]},
                          {"alap", r.policy_counts[2]}};
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [bucket, count] : r.wait_histogram) hist[std::to_string(bucket)] = count;
    j["remote_wait_histogram"] = hist;
    return j.dump(2);
}

}  // namespace dqc
