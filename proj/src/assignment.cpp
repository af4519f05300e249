#include "peersel/assignment.hpp"

#include <algorithm>
#include <numeric>

#include "peersel/rng.hpp"

namespace peersel {

namespace {

// One review round: a perfect reviewer->reviewee matching over allowed edges.
// Greedy random pass first, then augmenting paths for the stragglers.
// Returns reviewee matched to each reviewer, or empty on failure.
template <typename Allowed>
std::vector<AgentId> build_round(int n, Allowed&& allowed, std::mt19937_64& rng) {
    std::vector<AgentId> order(n);
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<AgentId> targets = order;
    std::shuffle(targets.begin(), targets.end(), rng);

    std::vector<AgentId> match_of_reviewee(n + 1, 0);  // reviewee -> reviewer
    std::vector<AgentId> match_of_reviewer(n + 1, 0);  // reviewer -> reviewee
    std::vector<int> visited(n + 1, 0);
    int stamp = 0;

    auto augment = [&](auto&& self, AgentId i) -> bool {
        for (AgentId j : targets) {
            if (visited[j] == stamp || !allowed(i, j)) continue;
            visited[j] = stamp;
            if (match_of_reviewee[j] == 0 || self(self, match_of_reviewee[j])) {
                match_of_reviewee[j] = i;
                match_of_reviewer[i] = j;
                return true;
            }
        }
        return false;
    };

    for (AgentId i : order) {
        // greedy: random allowed unmatched reviewee
        std::uniform_int_distribution<int> start(0, n - 1);
        int s = start(rng);
        bool done = false;
        for (int t = 0; t < n; ++t) {
            AgentId j = targets[(s + t) % n];
            if (match_of_reviewee[j] == 0 && allowed(i, j)) {
                match_of_reviewee[j] = i;
                match_of_reviewer[i] = j;
                done = true;
                break;
            }
        }
        if (!done) {
            ++stamp;
            if (!augment(augment, i)) return {};
        }
    }
    return match_of_reviewer;
}

template <typename Allowed>
Assignment generate_rounds(const Instance& instance, std::uint64_t seed, int retry_budget,
                           Allowed&& base_allowed, const char* what) {
    const int n = instance.n, m = instance.m;
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        auto rng = make_rng(sub_seed(seed, {static_cast<std::uint64_t>(attempt)}));
        std::vector<std::vector<AgentId>> pools(n + 1);
        std::vector<std::vector<char>> seen(n + 1, std::vector<char>(n + 1, 0));
        bool ok = true;
        for (int round = 0; round < m && ok; ++round) {
            auto allowed = [&](AgentId i, AgentId j) {
                return i != j && !seen[i][j] && base_allowed(i, j);
            };
            auto match = build_round(n, allowed, rng);
            if (match.empty()) {
                ok = false;
                break;
            }
            for (AgentId i = 1; i <= n; ++i) {
                pools[i].push_back(match[i]);
                seen[i][match[i]] = 1;
            }
        }
        if (ok) return Assignment::from_pools(n, std::move(pools));
    }
    throw AssignmentError(std::string(what) + ": retry budget exhausted after " +
                          std::to_string(retry_budget) + " attempts");
}

}  // namespace

Assignment generate_assignment(const Instance& instance, std::uint64_t seed, int retry_budget) {
    if (instance.m > instance.n - 1)
        throw AssignmentError("generate_assignment: m must be at most n-1");
    return generate_rounds(
        instance, seed, retry_budget, [](AgentId, AgentId) { return true; }, "generate_assignment");
}

Clustering random_clustering(int n, int l, std::uint64_t seed) {
    Clustering c;
    c.l = l;
    c.clusters.assign(l, {});
    c.cell_of.assign(n + 1, -1);
    std::vector<AgentId> agents(n);
    std::iota(agents.begin(), agents.end(), 1);
    auto rng = make_rng(sub_seed(seed, {0xC1u}));
    std::shuffle(agents.begin(), agents.end(), rng);
    for (int idx = 0; idx < n; ++idx) {
        int cell = idx % l;  // balanced: sizes differ by at most 1
        c.clusters[cell].push_back(agents[idx]);
        c.cell_of[agents[idx]] = cell;
    }
    for (auto& cell : c.clusters) std::sort(cell.begin(), cell.end());
    return c;
}

std::pair<Clustering, Assignment> generate_clustered_assignment(const Instance& instance, int l,
                                                                std::uint64_t seed,
                                                                int retry_budget) {
    const int n = instance.n, m = instance.m;
    if (l < 2) throw AssignmentError("generate_clustered_assignment: need l >= 2");
    Clustering clustering = random_clustering(n, l, seed);
    for (const auto& cell : clustering.clusters) {
        if (n - static_cast<int>(cell.size()) < m)
            throw AssignmentError("generate_clustered_assignment: infeasible, cluster of size " +
                                  std::to_string(cell.size()) + " leaves fewer than m=" +
                                  std::to_string(m) + " candidates (n=" + std::to_string(n) +
                                  ", l=" + std::to_string(l) + ")");
    }
    auto cross_cluster = [&](AgentId i, AgentId j) {
        return clustering.cell_of[i] != clustering.cell_of[j];
    };
    Assignment a = generate_rounds(instance, sub_seed(seed, {0xA5u}), retry_budget, cross_cluster,
                                   "generate_clustered_assignment");
    return {std::move(clustering), std::move(a)};
}

}  // namespace peersel
