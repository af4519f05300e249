#include "peersel/noise.hpp"

#include <algorithm>
#include <stdexcept>

#include "peersel/rng.hpp"

namespace peersel {

std::vector<AgentId> sample_mallows_ranking(int n, const MallowsParams& params,
                                            std::uint64_t seed) {
    const double phi = params.phi;
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<AgentId> order;
    order.reserve(n);
    // Insert item i among the i items; position j (1-based, 1 = top) costs
    // i - j discordant pairs, so P(j) proportional to phi^(i-j).
    for (int i = 1; i <= n; ++i) {
        int pos = i;  // bottom
        if (phi > 0.0) {
            // normalizer 1 + phi + ... + phi^(i-1), weights from bottom up
            double z = 0.0, w = 1.0;
            for (int t = 0; t < i; ++t) {
                z += w;
                w *= phi;
            }
            double u = unif(rng) * z;
            double acc = 0.0;
            w = 1.0;
            for (int t = 0; t < i; ++t) {
                acc += w;
                if (u < acc) {
                    pos = i - t;
                    break;
                }
                w *= phi;
            }
        }
        order.insert(order.begin() + (pos - 1), i);
    }
    return order;
}

Profile project_profile(const Assignment& assignment,
                        const std::vector<std::vector<AgentId>>& full_rankings) {
    const int n = static_cast<int>(assignment.pools.size()) - 1;
    std::vector<std::vector<AgentId>> order(n + 1);
    std::vector<char> in_pool(n + 1, 0);
    for (AgentId i = 1; i <= n; ++i) {
        for (AgentId j : assignment.pools[i]) in_pool[j] = 1;
        auto& row = order[i];
        row.reserve(assignment.pools[i].size());
        for (AgentId j : full_rankings[i])
            if (in_pool[j]) row.push_back(j);
        for (AgentId j : assignment.pools[i]) in_pool[j] = 0;
        if (row.size() != assignment.pools[i].size())
            throw std::invalid_argument("project_profile: full ranking does not cover pool of " +
                                        std::to_string(i));
    }
    return Profile(n, std::move(order));
}

int kendall_tau(const std::vector<AgentId>& a, const std::vector<AgentId>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("kendall_tau: rankings have different sizes");
    AgentId max_id = 0;
    for (AgentId x : a) max_id = std::max(max_id, x);
    std::vector<int> pos_a(max_id + 1, -1), pos_b(max_id + 1, -1);
    for (std::size_t p = 0; p < a.size(); ++p) {
        if (a[p] < 1 || a[p] > max_id) throw std::invalid_argument("kendall_tau: bad id");
        pos_a[a[p]] = static_cast<int>(p);
    }
    for (std::size_t p = 0; p < b.size(); ++p) {
        if (b[p] < 1 || b[p] > max_id || pos_a[b[p]] < 0)
            throw std::invalid_argument("kendall_tau: mismatched ground sets");
        pos_b[b[p]] = static_cast<int>(p);
    }
    int discordant = 0;
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = x + 1; y < a.size(); ++y) {
            AgentId u = a[x], v = a[y];  // u above v in a
            if (pos_b[u] > pos_b[v]) ++discordant;
        }
    return discordant;
}

}  // namespace peersel
