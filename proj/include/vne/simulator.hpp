#ifndef VNE_SIMULATOR_HPP_
#define VNE_SIMULATOR_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "vne/controller.hpp"
#include "vne/embedder.hpp"
#include "vne/link_weights.hpp"
#include "vne/metrics.hpp"
#include "vne/substrate.hpp"
#include "vne/workload.hpp"

namespace vne {

enum class StrategyKind { Proposed, SdnVn, Sspsm };

inline const char* to_string(StrategyKind s) {
    switch (s) {
        case StrategyKind::Proposed: return "proposed";
        case StrategyKind::SdnVn: return "sdnvn";
        case StrategyKind::Sspsm: return "sspsm";
    }
    return "?";
}

inline std::optional<StrategyKind> parse_strategy(const std::string& s) {
    if (s == "proposed") return StrategyKind::Proposed;
    if (s == "sdnvn") return StrategyKind::SdnVn;
    if (s == "sspsm") return StrategyKind::Sspsm;
    return std::nullopt;
}

struct SimConfig {
    TopologySpec topology;
    WorkloadSpec workload;
    StrategyKind strategy = StrategyKind::Proposed;
    int batch_n = 10;
    int remap_budget = -1;           // -1: same as batch_n
    Time batch_timeout = 0;          // 0: disabled
    double t_write = 1.0;            // latency charge per write transaction
    int checkpoint_every = 100;      // arrivals per snapshot
    Time sspsm_window = 50;          // request collection window for the SSPSM baseline
    bool sspsm_migration = true;
    int split_k_max = 2;
    uint64_t seed = 1;

    // verification hooks used by the test suites
    bool verify_conservation = false;
    bool verify_no_early_write = false;
    bool verify_remap_safety = false;

    // flag-gated debug streams (not owned)
    std::ostream* trace = nullptr;
    std::ostream* weights_dump = nullptr;

    int effective_batch_n() const { return strategy == StrategyKind::SdnVn ? 1 : batch_n; }
    int effective_remap_budget() const {
        return remap_budget >= 0 ? remap_budget : effective_batch_n();
    }
};

// number of transactions in one flush that carry at least one of the
// request's rules
inline long long charged_transactions(const std::vector<WriteTransaction>& txns, int request_id) {
    long long n = 0;
    for (const auto& tx : txns) {
        bool mine = false;
        for (const auto& r : tx.additions)
            if (r.request_id == request_id) {
                mine = true;
                break;
            }
        if (!mine)
            for (const auto& r : tx.deletions)
                if (r.request_id == request_id) {
                    mine = true;
                    break;
                }
        if (mine) ++n;
    }
    return n;
}

namespace detail {

struct SimEvent {
    Time time = 0;
    int priority = 0;  // 0 expiry, 1 arrival, 2 timer
    long long order_id = 0;
    enum class Kind { Expiry, Arrival, BatchTimeout, SspsmWindow } kind = Kind::Arrival;
    int request_id = -1;
    long long generation = 0;  // batch-timeout staleness guard

    bool operator<(const SimEvent& o) const {
        // reversed for std::priority_queue (min first)
        if (time != o.time) return time > o.time;
        if (priority != o.priority) return priority > o.priority;
        return order_id > o.order_id;
    }
};

}  // namespace detail

// One discrete-event run; a pure function of the config.
class Simulation {
public:
    explicit Simulation(const SimConfig& cfg) : cfg_(cfg), controller_(cfg.effective_batch_n()) {}

    RunSummary run() {
        auto net = build_topology(cfg_.topology, cfg_.seed);
        if (!net) throw std::invalid_argument("topology: " + net.rejection().detail);
        auto wl = generate_workload(cfg_.workload, cfg_.seed + 0x9e3779b97f4a7c15ULL);
        if (!wl) throw std::invalid_argument("workload: " + wl.rejection().detail);
        return run_on(*net, *wl);
    }

    RunSummary run_on(SubstrateNetwork& net, const Workload& wl) {
        net_ = &net;
        wl_ = &wl;
        summary_ = RunSummary{};
        summary_.strategy = to_string(cfg_.strategy);
        summary_.batch_n = cfg_.effective_batch_n();
        summary_.seed = cfg_.seed;

        for (const auto& ev : wl.events) {
            detail::SimEvent se;
            se.time = ev.time;
            se.kind = ev.is_arrival ? detail::SimEvent::Kind::Arrival
                                    : detail::SimEvent::Kind::Expiry;
            se.priority = ev.is_arrival ? 1 : 0;
            se.order_id = ev.request_id;
            se.request_id = ev.request_id;
            queue_.push(se);
        }

        Time last_time = 0;
        while (!queue_.empty()) {
            detail::SimEvent ev = queue_.top();
            queue_.pop();
            now_ = ev.time;
            last_time = ev.time;
            dispatch(ev);
            run_checks();
        }
        finish(last_time);
        return summary_;
    }

private:
    using Kind = detail::SimEvent::Kind;

    void dispatch(const detail::SimEvent& ev) {
        switch (ev.kind) {
            case Kind::Arrival: on_arrival(ev.request_id); break;
            case Kind::Expiry: on_expiry(ev.request_id); break;
            case Kind::BatchTimeout:
                if (ev.generation == flush_generation_ && !controller_.pending().empty())
                    do_flush();
                break;
            case Kind::SspsmWindow: on_window_close(); break;
        }
    }

    void on_arrival(int request_id) {
        ++arrived_;
        const auto& req = wl_->requests[request_id];
        if (cfg_.strategy == StrategyKind::Sspsm) {
            window_buffer_.push_back(request_id);
            if (!window_open_) {
                window_open_ = true;
                detail::SimEvent se;
                se.time = now_ + cfg_.sspsm_window;
                se.priority = 2;
                se.kind = Kind::SspsmWindow;
                se.order_id = next_timer_id_++;
                queue_.push(se);
            }
            maybe_snapshot();
            return;
        }

        auto emb = embed_request(*net_, req, EmbedVariant::Unsplittable, cfg_.split_k_max);
        if (!emb) {
            trace("reject req=", request_id, " reason=", to_string(emb.rejection().kind));
            maybe_snapshot();
            return;
        }
        ++accepted_;
        emb->map_time = now_;
        account_initial_mapping(*emb);
        live_[request_id] = std::move(*emb);
        trace("accept req=", request_id);

        bool was_empty = controller_.pending().empty();
        if (controller_.enqueue_success(request_id)) {
            do_flush();
        } else if (was_empty && cfg_.batch_timeout > 0) {
            detail::SimEvent se;
            se.time = now_ + cfg_.batch_timeout;
            se.priority = 2;
            se.kind = Kind::BatchTimeout;
            se.order_id = next_timer_id_++;
            se.generation = flush_generation_;
            queue_.push(se);
        }
        maybe_snapshot();
    }

    void on_expiry(int request_id) {
        if (cfg_.strategy == StrategyKind::Sspsm) {
            auto wit = std::find(window_buffer_.begin(), window_buffer_.end(), request_id);
            if (wit != window_buffer_.end()) {
                // expired before its window closed; it was never embedded
                window_buffer_.erase(wit);
                trace("window-drop req=", request_id);
                return;
            }
        }
        auto it = live_.find(request_id);
        if (it == live_.end()) return;  // was rejected at arrival
        bool waited_in_batch = controller_.pending_contains(request_id);
        if (waited_in_batch) latencies_.push_back(static_cast<double>(now_ - it->second.map_time));
        auto txns = controller_.on_expiry(*net_, it->second, now_);
        record_txns(txns);
        live_.erase(it);
        trace("expire req=", request_id, " txns=", txns.size());

        if (cfg_.strategy == StrategyKind::Sspsm) {
            if (cfg_.sspsm_migration) migrate_once();
        } else {
            do_remap();
        }
    }

    void account_initial_mapping(const Embedding& emb) {
        for (const auto& [vlink, paths] : emb.link_map) {
            (void)paths;
            cumulative_used_ += compute_used_resources(emb, vlink);
            ++mapping_count_;
        }
    }

    void do_flush() {
        auto fr = controller_.flush(live_, now_);
        ++flush_generation_;
        record_txns(fr.txns);
        for (int rid : fr.flushed_requests) {
            const auto& emb = live_.at(rid);
            double wait = static_cast<double>(now_ - emb.map_time);
            latencies_.push_back(wait + cfg_.t_write * charged_transactions(fr.txns, rid));
        }
        trace("flush requests=", fr.flushed_requests.size(), " txns=", fr.txns.size());
        do_remap();
    }

    void do_remap() {
        int budget = cfg_.effective_remap_budget();
        if (budget <= 0) return;
        if (cfg_.weights_dump) {
            for (const auto& rec : rank_mapped_links(*net_, live_))
                *cfg_.weights_dump << now_ << ',' << rec.request_id << ',' << rec.virtual_link_id
                                   << ',' << rec.used << ',' << rec.unallocated << ','
                                   << rec.weight << '\n';
        }
        long long before = cfg_.verify_remap_safety ? total_used() : 0;
        auto rr = controller_.remap_pass(*net_, live_, budget, now_);
        record_txns(rr.txns);
        for (const auto& ch : rr.changes) {
            cumulative_used_ += ch.new_used;
            ++mapping_count_;
            ++summary_.remap_count;
            if (cfg_.verify_remap_safety && ch.new_used >= ch.old_used)
                ++summary_.remap_violations;
            trace("remap req=", ch.request_id, " vlink=", ch.virtual_link_id);
        }
        if (cfg_.verify_remap_safety && total_used() > before) ++summary_.remap_violations;
    }

    long long total_used() const {
        long long t = 0;
        for (const auto& [rid, emb] : live_) {
            (void)rid;
            if (!emb.live) continue;
            for (const auto& [vlink, paths] : emb.link_map) {
                (void)paths;
                t += compute_used_resources(emb, vlink);
            }
        }
        return t;
    }

    // SSPSM: embed everything collected during the window, in arrival order
    void on_window_close() {
        window_open_ = false;
        std::vector<int> batch;
        batch.swap(window_buffer_);
        for (int rid : batch) {
            const auto& req = wl_->requests[rid];
            auto emb = embed_request(*net_, req, EmbedVariant::Splittable, cfg_.split_k_max);
            if (!emb) {
                trace("reject req=", rid, " reason=", to_string(emb.rejection().kind));
                continue;
            }
            ++accepted_;
            emb->map_time = now_;
            account_initial_mapping(*emb);
            auto txns = controller_.install_now(*emb, now_);
            record_txns(txns);
            latencies_.push_back(cfg_.t_write * charged_transactions(txns, rid));
            live_[rid] = std::move(*emb);
            trace("accept req=", rid, " (sspsm)");
        }
    }

    // SSPSM link transfer: re-split the largest-demand live virtual link
    // and keep the new split if it lowers hop-weighted bandwidth.
    void migrate_once() {
        int best_rid = -1, best_vlink = -1, best_demand = -1;
        for (const auto& [rid, emb] : live_) {
            if (!emb.live) continue;
            for (const auto& [vlink, paths] : emb.link_map) {
                int demand = 0;
                for (const auto& pa : paths) demand += pa.share;
                if (demand > best_demand) {
                    best_demand = demand;
                    best_rid = rid;
                    best_vlink = vlink;
                }
            }
        }
        if (best_rid < 0) return;
        Embedding& emb = live_.at(best_rid);
        auto& paths = emb.link_map.at(best_vlink);
        auto hop_weighted = [](const std::vector<PathAssignment>& ps) {
            long long t = 0;
            for (const auto& pa : ps) t += static_cast<long long>(pa.share) * pa.hops();
            return t;
        };
        long long old_score = hop_weighted(paths);
        std::vector<PathAssignment> old_paths = paths;
        int src = old_paths.front().switches.front(), dst = old_paths.front().switches.back();

        net_->release(emb.link_allocs.at(best_vlink));
        auto fresh = find_split_paths(*net_, src, dst, best_demand, cfg_.split_k_max);
        bool adopted = false;
        if (fresh && hop_weighted(*fresh) < old_score) {
            auto handle = net_->allocate(path_allocation(*net_, best_rid, *fresh));
            if (handle) {
                std::vector<int> old_sw, new_sw;
                for (const auto& pa : old_paths)
                    old_sw.insert(old_sw.end(), pa.switches.begin(), pa.switches.end());
                paths = *fresh;
                for (const auto& pa : paths)
                    new_sw.insert(new_sw.end(), pa.switches.begin(), pa.switches.end());
                emb.link_allocs[best_vlink] = *handle;
                auto txns = controller_.update_link_rules(emb, best_vlink, old_sw, new_sw, now_);
                record_txns(txns);
                for (const auto& [vl, ps] : emb.link_map) {
                    (void)ps;
                    if (vl == best_vlink) {
                        cumulative_used_ += compute_used_resources(emb, best_vlink);
                        ++mapping_count_;
                        ++summary_.remap_count;
                    }
                }
                adopted = true;
                trace("migrate req=", best_rid, " vlink=", best_vlink);
            }
        }
        if (!adopted) {
            auto handle = net_->allocate(path_allocation(*net_, best_rid, old_paths));
            if (!handle) throw std::logic_error("failed to restore split paths after migration");
            emb.link_allocs[best_vlink] = *handle;
        }
    }

    void record_txns(const std::vector<WriteTransaction>& txns) {
        summary_.total_write_transactions += static_cast<long long>(txns.size());
        if (cfg_.trace)
            for (const auto& tx : txns)
                *cfg_.trace << "txn t=" << tx.time << " switch=" << tx.switch_id
                            << " add=" << tx.additions.size() << " del=" << tx.deletions.size()
                            << '\n';
    }

    void run_checks() {
        if (cfg_.verify_conservation && !net_->residuals_consistent())
            ++summary_.conservation_violations;
        if (cfg_.verify_no_early_write) {
            for (int rid : controller_.pending())
                for (const auto& [sw, rules] : controller_.store().installed) {
                    (void)sw;
                    for (const auto& r : rules)
                        if (r.request_id == rid) ++summary_.early_write_violations;
                }
        }
    }

    void maybe_snapshot() {
        if (cfg_.checkpoint_every > 0 && arrived_ % cfg_.checkpoint_every == 0) take_snapshot(now_);
    }

    void take_snapshot(Time t) {
        MetricsSnapshot snap;
        snap.time = t;
        snap.arrived = arrived_;
        snap.accepted = accepted_;
        auto [lu, su] = snapshot_utilization(*net_);
        snap.avg_link_utilization = lu;
        snap.avg_switch_utilization = su;
        snap.cumulative_used = cumulative_used_;
        snap.mapping_count = mapping_count_;
        snap.write_transactions = summary_.total_write_transactions;
        snap.mean_latency = mean_of(latencies_);
        summary_.series.push_back(snap);
    }

    void finish(Time last_time) {
        bool need_final = summary_.series.empty()
                              ? arrived_ > 0
                              : summary_.series.back().arrived != arrived_ ||
                                    summary_.series.back().write_transactions !=
                                        summary_.total_write_transactions;
        if (need_final) {
            Time t = last_time;
            if (!summary_.series.empty() && t <= summary_.series.back().time)
                t = summary_.series.back().time + 1;
            take_snapshot(t);
        }
        summary_.final_acceptance = acceptance_rate(accepted_, arrived_);
        summary_.final_cost = compute_cost(cumulative_used_, mapping_count_);
        summary_.final_latency = mean_of(latencies_);
    }

    template <typename... Args>
    void trace(Args&&... args) {
        if (!cfg_.trace) return;
        *cfg_.trace << "t=" << now_ << ' ';
        (*cfg_.trace << ... << args) << '\n';
    }

    SimConfig cfg_;
    Controller controller_;
    SubstrateNetwork* net_ = nullptr;
    const Workload* wl_ = nullptr;
    std::priority_queue<detail::SimEvent> queue_;
    std::map<int, Embedding> live_;
    std::vector<int> window_buffer_;
    bool window_open_ = false;
    long long next_timer_id_ = 1'000'000'000LL;  // timers sort after workload events
    long long flush_generation_ = 0;
    Time now_ = 0;
    long long arrived_ = 0, accepted_ = 0;
    long long cumulative_used_ = 0, mapping_count_ = 0;
    std::vector<double> latencies_;
    RunSummary summary_;
};

inline RunSummary run(const SimConfig& cfg) { return Simulation(cfg).run(); }

}  // namespace vne

#endif
