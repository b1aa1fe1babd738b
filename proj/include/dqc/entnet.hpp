/** \file
 * Heralded entanglement generation by communication-qubit pairs and the
 * buffer pool storing successful links.
 *
 * Attempt schedules are synchronous (all pairs on the T_EG grid) or
 * asynchronous (pairs split into sub-groups with staggered offsets). The
 * service can additionally run in on-demand mode (attempts begin only when a
 * remote gate is waiting; nothing is ever stored) or hold mode (a pair
 * stores its own success and pauses until the link is consumed). One service
 * instance owns one deterministic event timeline; runs are replayable from
 * (params, seed).
 */
#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "dqc/noise.hpp"
#include "dqc/rng.hpp"

namespace dqc {

inline constexpr double kNoEvent = std::numeric_limits<double>::infinity();

enum class AttemptMode { Sync, Async };

struct EntParams {
    double p_pq1 = 1.0;  // photon-qubit entanglement probability, side 1
    double p_pq2 = 1.0;
    double len1_km = 0.0;  // channel length to the BSM station, side 1
    double len2_km = 0.0;
    double att_len_km = 20.0;
    double p_bsm = 0.5;  // photonic BSM success probability, <= 1/2
    std::optional<double> p_succ_override;
    double t_eg = 10.0;  // attempt cycle time, units of T_local
    int n_comm_pairs = 10;
    int n_buffer_pairs = 10;
    AttemptMode mode = AttemptMode::Sync;
    int subgroups = 0;  // 0 -> default min(n_comm_pairs, t_eg)
    std::optional<double> cutoff;  // max stored link age; disabled by default

    void validate() const;
    int effective_subgroups() const;
};

/// p_succ = p_pq1 * p_pq2 * exp(-L1/L_att) * exp(-L2/L_att) * p_bsm, or the
/// override when present.
double attempt_success_prob(const EntParams& p);

/// Cold-start attempt begin times for one pair. Sync: 0, T_EG, 2*T_EG, ...
/// Async: the pair's sub-group g = pair_index mod subgroups begins at
/// g*(T_EG/subgroups), then every T_EG. An attempt begun at t completes,
/// and its success is heralded, at t + T_EG.
std::vector<double> attempt_times(const EntParams& p, int pair_index, int count);

struct EntLink {
    long id = -1;
    int pair = -1;
    double created_at = 0.0;
    double f0 = 1.0;
};

struct PoolStats {
    long generated = 0;
    long consumed = 0;
    long discarded = 0;
    long blocked = 0;
};

enum class EntEventKind { Success, Blocked, Discard, Consume };

struct EntEvent {
    double t = 0.0;
    EntEventKind kind = EntEventKind::Success;
    long link_id = -1;
    int pair = -1;
};

class BufferPool {
  public:
    BufferPool() = default;
    explicit BufferPool(int capacity) : capacity_(capacity) {}

    int capacity() const { return capacity_; }
    int size() const { return static_cast<int>(links_.size()); }
    bool full() const { return size() >= capacity_; }
    const PoolStats& stats() const { return stats_; }
    const std::deque<EntLink>& links() const { return links_; }

    /// False (and a Blocked event) when the pool is full.
    bool insert(const EntLink& link, std::vector<EntEvent>* events);

    /// Removes and returns the oldest link (FIFO), if any.
    std::optional<EntLink> acquire(double t, std::vector<EntEvent>* events);

    /// Discards links older than `cutoff` at time `now`; discard events are
    /// stamped with the instant each link reached the cutoff age.
    void purge_expired(double now, const std::optional<double>& cutoff,
                       std::vector<EntEvent>* events);

    /// Earliest future discard instant under `cutoff`, or kNoEvent.
    double next_discard_time(const std::optional<double>& cutoff) const;

    void prefill(int count, double f0);

    /// generated == consumed + discarded + size()
    bool conservation_ok() const;

  private:
    int capacity_ = 0;
    std::deque<EntLink> links_;
    PoolStats stats_;
    long next_id_ = 0;

    friend class EntService;
};

enum class ServiceMode {
    Scheduled,  // sync or async attempts feeding the buffer
    Hold,       // no buffer: each pair stores its own success and pauses
    // No storage at all: attempts launch on the shared T_EG grid, one per
    // free communication pair per outstanding remote-gate request, and a
    // heralded success is consumed immediately by the longest-waiting gate.
    OnDemand,
};

struct ServiceConfig {
    EntParams params;
    ServiceMode service = ServiceMode::Scheduled;
    double link_f0 = 0.99;
    bool warm_start = false;   // async service already running at t = 0
    bool prefill = false;      // buffer pre-filled with fresh links at t = 0
    double post_delay = 0.0;   // comm->buffer swap latency added per delivery
};

class EntService {
  public:
    EntService(const ServiceConfig& cfg, std::uint64_t seed);

    double next_event_time() const;

    /// Processes the single earliest pending event (attempt completion or
    /// cutoff discard). Returns the delivered link when an on-demand attempt
    /// succeeds; scheduled/hold successes go to the pool.
    std::optional<EntLink> process_next(std::vector<EntEvent>& events);

    /// FIFO acquire from the pool; resumes the owning pair in hold mode.
    std::optional<EntLink> acquire(double t, std::vector<EntEvent>& events);

    /// On-demand stream management: the engine reports how many remote
    /// gates are currently waiting for a link.
    void set_demand(int n_waiting, double t);

    int pool_size(double t, std::vector<EntEvent>& events);
    const BufferPool& pool() const { return pool_; }
    const ServiceConfig& config() const { return cfg_; }

    /// True when the service can still deliver a link some day.
    bool can_make_progress() const;

    /// Advances through every event in (from_t, to_t]; convenience wrapper
    /// over process_next for window-based stepping.
    std::vector<EntEvent> step(double from_t, double to_t);

  private:
    ServiceConfig cfg_;
    double p_succ_;
    BufferPool pool_;
    std::mt19937_64 rng_;

    // Scheduled/hold: per-pair next completion instant (kNoEvent = paused).
    std::vector<double> next_completion_;
    // OnDemand: demand-gated grid attempts. Every free pair joins each tick,
    // distributed round-robin over the outstanding requests.
    int demand_ = 0;                 // remote gates currently waiting
    std::vector<int> inflight_;      // attempts per request, previous tick
    int deliverable_ = 0;            // served requests not yet handed out
    double deliver_t_ = 0.0;
    double next_tick_ = kNoEvent;

    int earliest_pair() const;
    void purge(double now, std::vector<EntEvent>& events);
    bool draw_success() { return uniform_unit(rng_) < p_succ_; }
};

}  // namespace dqc
