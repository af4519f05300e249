#include "peersel/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "peersel/rng.hpp"

namespace peersel {

namespace {

void require_cross_cluster(const Clustering& clustering, const Assignment& assignment,
                           const char* what) {
    const int n = static_cast<int>(assignment.pools.size()) - 1;
    for (AgentId i = 1; i <= n; ++i)
        for (AgentId j : assignment.pools[i])
            if (clustering.cell_of[i] == clustering.cell_of[j])
                throw BaselineError(std::string(what) + ": assignment is not cross-cluster (" +
                                    std::to_string(i) + " reviews " + std::to_string(j) + ")");
}

// Agents ordered by score descending, ties by lower index.
std::vector<AgentId> by_score(const std::vector<AgentId>& agents,
                              const std::vector<double>& score) {
    std::vector<AgentId> order = agents;
    std::stable_sort(order.begin(), order.end(), [&](AgentId a, AgentId b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return a < b;
    });
    return order;
}

SelectionResult select_from(std::vector<AgentId> accepted, int n) {
    std::sort(accepted.begin(), accepted.end());
    SelectionResult result;
    result.accepted = std::move(accepted);
    result.nomination_counts.assign(n + 1, 0);
    return result;
}

std::vector<double> borda_received(const Instance& instance, const Assignment& assignment,
                                   const Profile& profile) {
    std::vector<double> score(instance.n + 1, 0.0);
    for (AgentId i = 1; i <= instance.n; ++i)
        for (AgentId j : assignment.pools[i]) score[j] += instance.m - profile.rank_of(i, j);
    return score;
}

// Per-cluster integer quotas summing to k; base floor(k/l) plus seeded-random
// extras, clamped to cluster sizes with overflow pushed to clusters that
// still have room (lowest cluster id first).
std::vector<int> partition_quotas(const Clustering& clustering, int k, std::uint64_t seed) {
    const int l = clustering.l;
    std::vector<int> quota(l, k / l);
    std::vector<int> cells(l);
    std::iota(cells.begin(), cells.end(), 0);
    auto rng = make_rng(seed);
    std::shuffle(cells.begin(), cells.end(), rng);
    for (int e = 0; e < k % l; ++e) ++quota[cells[e]];

    int overflow = 0;
    for (int c = 0; c < l; ++c) {
        const int cap = static_cast<int>(clustering.clusters[c].size());
        if (quota[c] > cap) {
            overflow += quota[c] - cap;
            quota[c] = cap;
        }
    }
    for (int c = 0; c < l && overflow > 0; ++c) {
        const int room = static_cast<int>(clustering.clusters[c].size()) - quota[c];
        const int take = std::min(room, overflow);
        quota[c] += take;
        overflow -= take;
    }
    if (overflow > 0) throw BaselineError("partition_quotas: k exceeds n");
    return quota;
}

}  // namespace

SelectionResult run_vanilla(const Instance& instance, const Assignment& assignment,
                            const Profile& profile) {
    const auto score = borda_received(instance, assignment, profile);
    std::vector<AgentId> agents(instance.n);
    std::iota(agents.begin(), agents.end(), 1);
    auto order = by_score(agents, score);
    order.resize(instance.k);
    return select_from(std::move(order), instance.n);
}

SelectionResult run_partition(const Instance& instance, const Clustering& clustering,
                              const Assignment& assignment, const Profile& profile,
                              std::uint64_t seed) {
    require_cross_cluster(clustering, assignment, "run_partition");
    const auto score = borda_received(instance, assignment, profile);
    const auto quota = partition_quotas(clustering, instance.k, seed);

    std::vector<AgentId> accepted;
    for (int c = 0; c < clustering.l; ++c) {
        auto order = by_score(clustering.clusters[c], score);
        order.resize(quota[c]);
        accepted.insert(accepted.end(), order.begin(), order.end());
    }
    return select_from(std::move(accepted), instance.n);
}

std::vector<int> randomized_apportionment(const std::vector<double>& targets, std::uint64_t seed) {
    double sum = std::accumulate(targets.begin(), targets.end(), 0.0);
    const double k_real = std::round(sum);
    if (std::abs(sum - k_real) > 1e-9)
        throw BaselineError("randomized_apportionment: targets sum to " + std::to_string(sum) +
                            ", not an integer");
    for (double t : targets)
        if (t < -1e-12) throw BaselineError("randomized_apportionment: negative target");
    const int count = static_cast<int>(targets.size());

    // all-integer targets pass through untouched
    bool integral = true;
    for (double t : targets)
        if (std::abs(t - std::round(t)) > 1e-9) integral = false;
    if (integral) {
        std::vector<int> q(count);
        for (int c = 0; c < count; ++c) q[c] = static_cast<int>(std::round(targets[c]));
        return q;
    }

    const double scale = sum > 0.0 ? k_real / sum : 1.0;
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);

    // systematic rounding: count lattice points u + z inside each cumulative slab
    std::vector<int> quotas(count, 0);
    double cum_prev = 0.0;
    int assigned_prev = 0;
    for (int c = 0; c < count; ++c) {
        const double cum = (c + 1 == count) ? k_real : cum_prev + targets[c] * scale;
        const int assigned = (c + 1 == count) ? static_cast<int>(k_real)
                                              : static_cast<int>(std::ceil(cum - u));
        quotas[c] = assigned - assigned_prev;
        cum_prev = cum;
        assigned_prev = assigned;
    }
    return quotas;
}

SelectionResult run_edp(const Instance& instance, const Clustering& clustering,
                        const Assignment& assignment, const Profile& profile, std::uint64_t seed,
                        int k_override) {
    require_cross_cluster(clustering, assignment, "run_edp");
    const int n = instance.n, m = instance.m;
    const int k = k_override >= 0 ? k_override : instance.k;
    if (k == 0) return select_from({}, n);
    if (k > n) throw BaselineError("run_edp: k exceeds n");

    // dollar shares: Borda points normalized so each reviewer hands out 1
    const double pool_points = m * (m - 1) / 2.0;
    std::vector<double> received(n + 1, 0.0);
    for (AgentId i = 1; i <= n; ++i) {
        for (AgentId j : assignment.pools[i]) {
            const double pts = m - profile.rank_of(i, j);
            received[j] += pool_points > 0.0 ? pts / pool_points : 1.0 / m;
        }
    }

    // cluster targets proportional to received mass, capped at cluster size
    const int l = clustering.l;
    std::vector<double> mass(l, 0.0);
    for (int c = 0; c < l; ++c)
        for (AgentId j : clustering.clusters[c]) mass[c] += received[j];
    const double total_mass = std::accumulate(mass.begin(), mass.end(), 0.0);  // = n

    std::vector<double> target(l);
    for (int c = 0; c < l; ++c) target[c] = mass[c] / total_mass * k;

    // cap at cluster sizes, redistributing the excess among uncapped clusters
    std::vector<char> capped(l, 0);
    for (int pass = 0; pass < l; ++pass) {
        double excess = 0.0, free_mass = 0.0;
        for (int c = 0; c < l; ++c) {
            const double cap = static_cast<double>(clustering.clusters[c].size());
            if (!capped[c] && target[c] > cap) {
                excess += target[c] - cap;
                target[c] = cap;
                capped[c] = 1;
            }
            if (!capped[c]) free_mass += target[c];
        }
        if (excess <= 1e-9) break;
        if (free_mass <= 0.0) {
            // k <= n guarantees total capacity; anything left here is FP dust
            if (excess < 1e-6) break;
            throw BaselineError("run_edp: k exceeds total capacity");
        }
        for (int c = 0; c < l; ++c)
            if (!capped[c]) target[c] += excess * target[c] / free_mass;
    }

    auto quotas = randomized_apportionment(target, seed);
    // guard against rounding pushing a quota past its cluster size
    int surplus = 0;
    for (int c = 0; c < l; ++c) {
        const int cap = static_cast<int>(clustering.clusters[c].size());
        if (quotas[c] > cap) {
            surplus += quotas[c] - cap;
            quotas[c] = cap;
        }
    }
    for (int c = 0; c < l && surplus > 0; ++c) {
        const int room = static_cast<int>(clustering.clusters[c].size()) - quotas[c];
        const int take = std::min(room, surplus);
        quotas[c] += take;
        surplus -= take;
    }

    std::vector<AgentId> accepted;
    for (int c = 0; c < l; ++c) {
        auto order = by_score(clustering.clusters[c], received);
        order.resize(quotas[c]);
        accepted.insert(accepted.end(), order.begin(), order.end());
    }
    return select_from(std::move(accepted), instance.n);
}

}  // namespace peersel
