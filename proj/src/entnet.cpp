#include "dqc/entnet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqc {

void EntParams::validate() const {
    auto check_prob = [](double v, const char* name) {
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument(std::string("ent params: ") + name + " outside [0, 1]");
    };
    check_prob(p_pq1, "p_pq1");
    check_prob(p_pq2, "p_pq2");
    check_prob(p_bsm, "p_bsm");
    if (p_bsm > 0.5) throw std::invalid_argument("ent params: p_bsm exceeds 1/2");
    if (p_succ_override) check_prob(*p_succ_override, "p_succ_override");
    if (t_eg < 1.0) throw std::invalid_argument("ent params: t_eg below 1");
    if (n_comm_pairs < 0 || n_buffer_pairs < 0)
        throw std::invalid_argument("ent params: negative pair count");
    if (att_len_km <= 0.0) throw std::invalid_argument("ent params: attenuation length <= 0");
    if (len1_km < 0.0 || len2_km < 0.0) throw std::invalid_argument("ent params: negative length");
    if (subgroups < 0) throw std::invalid_argument("ent params: negative subgroup count");
    if (subgroups > t_eg)
        throw std::invalid_argument("ent params: more subgroups than T_EG/T_local slots");
    if (cutoff && *cutoff <= 0.0) throw std::invalid_argument("ent params: cutoff <= 0");
}

int EntParams::effective_subgroups() const {
    if (subgroups > 0) return subgroups;
    const int slots = static_cast<int>(t_eg);
    return std::max(1, std::min(n_comm_pairs, slots));
}

double attempt_success_prob(const EntParams& p) {
    if (p.p_succ_override) return *p.p_succ_override;
    const double eta1 = std::exp(-p.len1_km / p.att_len_km);
    const double eta2 = std::exp(-p.len2_km / p.att_len_km);
    return p.p_pq1 * p.p_pq2 * eta1 * eta2 * p.p_bsm;
}

std::vector<double> attempt_times(const EntParams& p, int pair_index, int count) {
    if (pair_index < 0 || pair_index >= p.n_comm_pairs)
        throw std::invalid_argument("attempt_times: pair index out of range");
    p.validate();
    double offset = 0.0;
    if (p.mode == AttemptMode::Async) {
        const int k = p.effective_subgroups();
        const int g = pair_index % k;
        offset = g * (p.t_eg / k);
    }
    std::vector<double> times;
    times.reserve(count);
    for (int j = 0; j < count; ++j) times.push_back(offset + j * p.t_eg);
    return times;
}

bool BufferPool::insert(const EntLink& link, std::vector<EntEvent>* events) {
    if (full()) {
        ++stats_.blocked;
        if (events)
            events->push_back({link.created_at, EntEventKind::Blocked, link.id, link.pair});
        return false;
    }
    links_.push_back(link);
    ++stats_.generated;
    if (events) events->push_back({link.created_at, EntEventKind::Success, link.id, link.pair});
    return true;
}

std::optional<EntLink> BufferPool::acquire(double t, std::vector<EntEvent>* events) {
    if (links_.empty()) return std::nullopt;
    EntLink link = links_.front();
    links_.pop_front();
    ++stats_.consumed;
    if (events) events->push_back({t, EntEventKind::Consume, link.id, link.pair});
    return link;
}

void BufferPool::purge_expired(double now, const std::optional<double>& cutoff,
                               std::vector<EntEvent>* events) {
    if (!cutoff) return;
    while (!links_.empty() && links_.front().created_at + *cutoff <= now) {
        const EntLink& link = links_.front();
        ++stats_.discarded;
        if (events)
            events->push_back(
                {link.created_at + *cutoff, EntEventKind::Discard, link.id, link.pair});
        links_.pop_front();
    }
}

double BufferPool::next_discard_time(const std::optional<double>& cutoff) const {
    if (!cutoff || links_.empty()) return kNoEvent;
    return links_.front().created_at + *cutoff;
}

void BufferPool::prefill(int count, double f0) {
    for (int i = 0; i < count && !full(); ++i) {
        links_.push_back({next_id_++, -1, 0.0, f0});
        ++stats_.generated;
    }
}

bool BufferPool::conservation_ok() const {
    return stats_.generated == stats_.consumed + stats_.discarded + size();
}

EntService::EntService(const ServiceConfig& cfg, std::uint64_t seed)
    : cfg_(cfg), p_succ_(attempt_success_prob(cfg.params)), rng_(seed) {
    cfg_.params.validate();
    const EntParams& p = cfg_.params;

    const int capacity = (cfg_.service == ServiceMode::Hold) ? p.n_comm_pairs : p.n_buffer_pairs;
    pool_ = BufferPool(capacity);
    if (cfg_.prefill && cfg_.service == ServiceMode::Scheduled)
        pool_.prefill(capacity, cfg_.link_f0);

    if (cfg_.service == ServiceMode::OnDemand) return;

    next_completion_.assign(p.n_comm_pairs, kNoEvent);
    for (int i = 0; i < p.n_comm_pairs; ++i) {
        double offset = 0.0;
        if (p.mode == AttemptMode::Async) {
            const int k = p.effective_subgroups();
            offset = (i % k) * (p.t_eg / k);
        }
        if (cfg_.warm_start && p.mode == AttemptMode::Async) {
            // Service already running: the pipeline delivers on the pair's
            // phase from the start (first heralding at the offset itself,
            // or one full cycle in for the zero-offset sub-group).
            next_completion_[i] = (offset > 0.0) ? offset : p.t_eg;
        } else {
            next_completion_[i] = offset + p.t_eg;
        }
        next_completion_[i] += cfg_.post_delay;
    }
}

int EntService::earliest_pair() const {
    int best = -1;
    for (int i = 0; i < static_cast<int>(next_completion_.size()); ++i)
        if (best < 0 || next_completion_[i] < next_completion_[best]) best = i;
    return best;
}

// Cutoff expiry of a held link frees its communication pair; the pair
// resumes attempting from the discard instant.
void EntService::purge(double now, std::vector<EntEvent>& events) {
    const std::size_t before = events.size();
    pool_.purge_expired(now, cfg_.params.cutoff, &events);
    if (cfg_.service != ServiceMode::Hold) return;
    for (std::size_t i = before; i < events.size(); ++i)
        if (events[i].kind == EntEventKind::Discard && events[i].pair >= 0)
            next_completion_[events[i].pair] = events[i].t + cfg_.params.t_eg + cfg_.post_delay;
}

double EntService::next_event_time() const {
    double t = pool_.next_discard_time(cfg_.params.cutoff);
    if (cfg_.service == ServiceMode::OnDemand) {
        if (deliverable_ > 0) return deliver_t_;
        if (!inflight_.empty() || demand_ > 0) return next_tick_;
        return t;
    }
    const int pair = earliest_pair();
    if (pair >= 0) t = std::min(t, next_completion_[pair]);
    return t;
}

std::optional<EntLink> EntService::process_next(std::vector<EntEvent>& events) {
    const double t_discard = pool_.next_discard_time(cfg_.params.cutoff);

    if (cfg_.service == ServiceMode::OnDemand) {
        if (deliverable_ == 0) {
            if (inflight_.empty() && demand_ == 0) return std::nullopt;
            // Grid tick: resolve the heraldings of the previous window's
            // attempts (one request is served by its first success; extra
            // successes for the same request are wasted), then spread every
            // pair over the still-unserved requests for the next window.
            const double t = next_tick_;
            int served = 0;
            for (int attempts : inflight_) {
                int successes = 0;
                for (int a = 0; a < attempts; ++a)
                    if (draw_success()) ++successes;
                if (successes >= 1) {
                    ++served;
                    pool_.stats_.blocked += successes - 1;
                    for (int w = 1; w < successes; ++w)
                        events.push_back({t, EntEventKind::Blocked, pool_.next_id_++, -1});
                }
            }
            pool_.stats_.generated += served;
            pool_.stats_.consumed += served;
            deliverable_ = served;
            deliver_t_ = t;
            const int next_demand = std::max(0, demand_ - served);
            inflight_.clear();
            if (next_demand > 0) {
                const int pairs = cfg_.params.n_comm_pairs;
                const int covered = std::min(next_demand, pairs);
                inflight_.assign(covered, pairs / next_demand);
                for (int i = 0; i < pairs % next_demand && i < covered; ++i) ++inflight_[i];
                // Requests beyond the pair count wait unattended this round.
                while (!inflight_.empty() && inflight_.back() == 0) inflight_.pop_back();
            }
            next_tick_ = t + cfg_.params.t_eg;
            if (deliverable_ == 0) return std::nullopt;
        }
        --deliverable_;
        EntLink link{pool_.next_id_++, -1, deliver_t_, cfg_.link_f0};
        events.push_back({deliver_t_, EntEventKind::Success, link.id, link.pair});
        events.push_back({deliver_t_, EntEventKind::Consume, link.id, link.pair});
        return link;
    }

    const int pair = earliest_pair();
    const double t_pair = (pair >= 0) ? next_completion_[pair] : kNoEvent;
    if (t_discard < t_pair) {
        purge(t_discard, events);
        return std::nullopt;
    }
    if (pair < 0 || t_pair == kNoEvent) return std::nullopt;

    const double t = t_pair;
    if (draw_success()) {
        EntLink link{pool_.next_id_++, pair, t, cfg_.link_f0};
        purge(t, events);
        pool_.insert(link, &events);
        if (cfg_.service == ServiceMode::Hold) {
            // The communication pair stores its own link and stops
            // attempting until it is consumed.
            next_completion_[pair] = kNoEvent;
            return std::nullopt;
        }
    }
    next_completion_[pair] = t + cfg_.params.t_eg;
    return std::nullopt;
}

std::optional<EntLink> EntService::acquire(double t, std::vector<EntEvent>& events) {
    purge(t, events);
    auto link = pool_.acquire(t, &events);
    if (link && cfg_.service == ServiceMode::Hold && link->pair >= 0) {
        // Freed communication pair restarts attempting immediately.
        next_completion_[link->pair] = t + cfg_.params.t_eg + cfg_.post_delay;
    }
    return link;
}

void EntService::set_demand(int n_waiting, double t) {
    if (cfg_.service != ServiceMode::OnDemand) return;
    const bool was_idle = inflight_.empty() && deliverable_ == 0 && demand_ == 0;
    demand_ = n_waiting;
    if (was_idle && demand_ > 0) {
        // Align the first launch to the shared attempt grid.
        const double t_eg = cfg_.params.t_eg;
        next_tick_ = std::ceil(t / t_eg) * t_eg;
        if (next_tick_ < t) next_tick_ = t;  // guard against rounding down
    }
}

int EntService::pool_size(double t, std::vector<EntEvent>& events) {
    purge(t, events);
    return pool_.size();
}

bool EntService::can_make_progress() const {
    if (p_succ_ <= 0.0 || cfg_.params.n_comm_pairs == 0) return pool_.size() > 0;
    if (cfg_.service == ServiceMode::Hold) {
        // Progress requires an attempting pair or a stored link.
        if (pool_.size() > 0) return true;
        for (double t : next_completion_)
            if (t != kNoEvent) return true;
        return false;
    }
    return true;
}

std::vector<EntEvent> EntService::step(double from_t, double to_t) {
    if (!(from_t < to_t)) throw std::invalid_argument("step: need from_t < to_t");
    std::vector<EntEvent> events;
    while (true) {
        const double t = next_event_time();
        if (t == kNoEvent || t > to_t) break;
        if (t <= from_t) {
            // Events at or before the window start belong to earlier steps.
            throw std::logic_error("step: pending event before window start");
        }
        process_next(events);
    }
    return events;
}

}  // namespace dqc
