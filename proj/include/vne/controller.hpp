#ifndef VNE_CONTROLLER_HPP_
#define VNE_CONTROLLER_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "vne/embedder.hpp"
#include "vne/link_weights.hpp"
#include "vne/substrate.hpp"

namespace vne {

// Rule identity is derived from what the rule forwards: one rule per
// (request, virtual link, on-path switch).
struct RuleKey {
    int request_id = -1;
    int virtual_link_id = -1;
    int switch_id = -1;

    auto operator<=>(const RuleKey&) const = default;
};

struct WriteTransaction {
    Time time = 0;
    int switch_id = -1;
    std::vector<RuleKey> additions;
    std::vector<RuleKey> deletions;
};

// Controller database (rules that should exist) vs. per-switch tables
// (rules actually installed).
struct RuleStore {
    std::set<RuleKey> intended;
    std::map<int, std::set<RuleKey>> installed;

    // installed == projection of intended, per switch
    bool consistent() const {
        std::map<int, std::set<RuleKey>> proj;
        for (const auto& r : intended) proj[r.switch_id].insert(r);
        for (const auto& [sw, rules] : installed)
            if (!rules.empty() && proj[sw] != rules) return false;
        for (const auto& [sw, rules] : proj) {
            auto it = installed.find(sw);
            if (it == installed.end() || it->second != rules) return false;
        }
        return true;
    }
};

inline std::vector<RuleKey> rules_for_embedding(const Embedding& emb) {
    std::set<RuleKey> out;
    for (const auto& [vlink, paths] : emb.link_map)
        for (const auto& pa : paths)
            for (int sw : pa.switches) out.insert({emb.request_id, vlink, sw});
    return {out.begin(), out.end()};
}

// Batched flow-rule installation with delta-only writes and
// weight-prioritized remapping.
class Controller {
public:
    struct FlushResult {
        std::vector<int> flushed_requests;
        std::vector<WriteTransaction> txns;
    };
    struct RemapChange {
        int request_id = -1;
        int virtual_link_id = -1;
        std::vector<int> old_path, new_path;
        long long old_used = 0, new_used = 0;
    };
    struct RemapResult {
        std::vector<RemapChange> changes;
        std::vector<WriteTransaction> txns;
    };

    explicit Controller(int batch_n, std::optional<Time> timeout = std::nullopt)
        : batch_n_(batch_n), timeout_(timeout) {
        if (batch_n < 1) throw std::invalid_argument("batch size must be >= 1");
    }

    int batch_n() const { return batch_n_; }
    std::optional<Time> timeout() const { return timeout_; }
    const RuleStore& store() const { return store_; }
    const std::vector<int>& pending() const { return pending_; }
    bool pending_contains(int request_id) const {
        return std::find(pending_.begin(), pending_.end(), request_id) != pending_.end();
    }

    // true when the nth success arrived and the batch must flush now
    bool enqueue_success(int request_id) {
        pending_.push_back(request_id);
        return static_cast<int>(pending_.size()) >= batch_n_;
    }

    // Writes the whole pending batch: all rules enter the database, then
    // one coalesced delta transaction per affected switch.
    FlushResult flush(const std::map<int, Embedding>& live, Time now) {
        FlushResult fr;
        std::set<int> affected;
        for (int rid : pending_) {
            const Embedding& emb = live.at(rid);
            for (const auto& rule : rules_for_embedding(emb)) {
                store_.intended.insert(rule);
                affected.insert(rule.switch_id);
            }
            fr.flushed_requests.push_back(rid);
        }
        pending_.clear();
        fr.txns = sync_switches(affected, now);
        return fr;
    }

    // Immediate single-embedding install (no batching path).
    std::vector<WriteTransaction> install_now(const Embedding& emb, Time now) {
        std::set<int> affected;
        for (const auto& rule : rules_for_embedding(emb)) {
            store_.intended.insert(rule);
            affected.insert(rule.switch_id);
        }
        return sync_switches(affected, now);
    }

    // Deletions bypass the batch: resources are retrieved immediately at
    // expiration. An embedding still pending just leaves the queue.
    std::vector<WriteTransaction> on_expiry(SubstrateNetwork& net, Embedding& emb, Time now) {
        auto it = std::find(pending_.begin(), pending_.end(), emb.request_id);
        if (it != pending_.end()) {
            pending_.erase(it);
            tear_down(net, emb);
            return {};
        }
        std::set<int> affected;
        for (auto rule_it = store_.intended.begin(); rule_it != store_.intended.end();) {
            if (rule_it->request_id == emb.request_id) {
                affected.insert(rule_it->switch_id);
                rule_it = store_.intended.erase(rule_it);
            } else {
                ++rule_it;
            }
        }
        tear_down(net, emb);
        return sync_switches(affected, now);
    }

    // Ranks live links by weight and tries to re-route the top `budget`
    // onto strictly cheaper paths. Adoption deltas are written immediately.
    RemapResult remap_pass(SubstrateNetwork& net, std::map<int, Embedding>& live, int budget,
                           Time now) {
        RemapResult rr;
        if (budget <= 0) return rr;
        auto records = rank_mapped_links(net, live);
        int attempts = 0;
        for (const auto& rec : records) {
            if (attempts >= budget) break;
            auto lit = live.find(rec.request_id);
            if (lit == live.end() || !lit->second.live) continue;
            Embedding& emb = lit->second;
            if (pending_contains(rec.request_id)) continue;  // rules not installed yet
            auto& paths = emb.link_map.at(rec.virtual_link_id);
            if (paths.size() != 1) continue;  // split mappings are not remapped
            ++attempts;

            const PathAssignment old_path = paths[0];
            long long old_used = compute_used_resources(emb, rec.virtual_link_id);
            int src = old_path.switches.front(), dst = old_path.switches.back();
            int demand = old_path.share;

            int old_handle = emb.link_allocs.at(rec.virtual_link_id);
            net.release(old_handle);
            auto candidate = find_unsplittable_path(net, src, dst, demand);
            bool adopted = false;
            if (candidate && path_used_resources(*candidate, demand) < old_used) {
                PathAssignment fresh{*candidate, demand};
                auto handle = net.allocate(
                    path_allocation(net, emb.request_id, {fresh}));
                if (handle) {
                    adopted = true;
                    RemapChange ch;
                    ch.request_id = rec.request_id;
                    ch.virtual_link_id = rec.virtual_link_id;
                    ch.old_path = old_path.switches;
                    ch.new_path = fresh.switches;
                    ch.old_used = old_used;
                    ch.new_used = path_used_resources(*candidate, demand);
                    paths[0] = fresh;
                    emb.link_allocs[rec.virtual_link_id] = *handle;
                    auto txns = update_link_rules(emb, rec.virtual_link_id, old_path.switches,
                                                  fresh.switches, now);
                    rr.txns.insert(rr.txns.end(), txns.begin(), txns.end());
                    rr.changes.push_back(std::move(ch));
                }
            }
            if (!adopted) {
                // restore the old path; must succeed since it was just freed
                auto handle = net.allocate(path_allocation(net, emb.request_id, {old_path}));
                if (!handle) throw std::logic_error("failed to restore path after remap attempt");
                emb.link_allocs[rec.virtual_link_id] = *handle;
            }
        }
        return rr;
    }

    // Rewrites the database for one re-routed link and syncs the union of
    // old and new path switches.
    std::vector<WriteTransaction> update_link_rules(const Embedding& emb, int vlink,
                                                    const std::vector<int>& old_switches,
                                                    const std::vector<int>& new_switches,
                                                    Time now) {
        std::set<int> affected(old_switches.begin(), old_switches.end());
        affected.insert(new_switches.begin(), new_switches.end());
        for (int sw : old_switches) store_.intended.erase({emb.request_id, vlink, sw});
        for (const auto& pa : emb.link_map.at(vlink))
            for (int sw : pa.switches) store_.intended.insert({emb.request_id, vlink, sw});
        return sync_switches(affected, now);
    }

private:
    // Delta write: per affected switch, one transaction carrying exactly
    // the additions/deletions that reconcile its table with the database.
    std::vector<WriteTransaction> sync_switches(const std::set<int>& affected, Time now) {
        std::map<int, std::set<RuleKey>> proj;
        for (const auto& r : store_.intended)
            if (affected.count(r.switch_id)) proj[r.switch_id].insert(r);
        std::vector<WriteTransaction> txns;
        for (int sw : affected) {
            const auto& want = proj[sw];
            auto& have = store_.installed[sw];
            WriteTransaction tx;
            tx.time = now;
            tx.switch_id = sw;
            std::set_difference(want.begin(), want.end(), have.begin(), have.end(),
                                std::back_inserter(tx.additions));
            std::set_difference(have.begin(), have.end(), want.begin(), want.end(),
                                std::back_inserter(tx.deletions));
            if (tx.additions.empty() && tx.deletions.empty()) continue;
            have = want;
            txns.push_back(std::move(tx));
        }
        return txns;
    }

    int batch_n_;
    std::optional<Time> timeout_;
    std::vector<int> pending_;
    RuleStore store_;
};

}  // namespace vne

#endif
