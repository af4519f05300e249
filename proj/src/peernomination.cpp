#include "peersel/peernomination.hpp"

#include <algorithm>
#include <cmath>

#include "peersel/rng.hpp"

namespace peersel {

NominationQuota NominationQuota::from(const Instance& instance, double epsilon) {
    return from_value(static_cast<double>(instance.k) / instance.n * instance.m + epsilon);
}

NominationQuota NominationQuota::from_value(double quota) {
    NominationQuota q;
    q.quota = std::max(quota, 0.0);
    q.integer_part = static_cast<int>(std::floor(q.quota));
    q.fractional_part = q.quota - q.integer_part;
    return q;
}

double nomination_probability(int rank_in_pool, const NominationQuota& quota) {
    if (rank_in_pool <= quota.integer_part) return 1.0;
    if (rank_in_pool == quota.integer_part + 1) return quota.fractional_part;
    return 0.0;
}

SelectionResult run_peer_nomination(const Instance& instance, const Assignment& assignment,
                                    const Profile& profile, double epsilon, std::uint64_t seed) {
    const auto quota = NominationQuota::from(instance, epsilon);
    const int threshold = acceptance_threshold(instance.m);

    SelectionResult result;
    result.nomination_counts.assign(instance.n + 1, 0);
    for (AgentId j = 1; j <= instance.n; ++j) {
        int count = 0;
        for (AgentId i : assignment.reviewers[j]) {
            const int rank = profile.rank_of(i, j);
            if (rank <= quota.integer_part) {
                ++count;
            } else if (rank == quota.integer_part + 1 && quota.fractional_part > 0.0) {
                auto rng = make_rng(sub_seed(seed, {static_cast<std::uint64_t>(i),
                                                   static_cast<std::uint64_t>(j)}));
                std::uniform_real_distribution<double> unif(0.0, 1.0);
                const bool nominated = unif(rng) < quota.fractional_part;
                result.fractional_draws.push_back({i, j, nominated});
                if (nominated) ++count;
            }
        }
        result.nomination_counts[j] = count;
        if (count >= threshold) result.accepted.push_back(j);
    }
    return result;
}

double poisson_binomial_tail(const std::vector<double>& probs, int threshold) {
    if (threshold <= 0) return 1.0;
    const int m = static_cast<int>(probs.size());
    if (threshold > m) return 0.0;
    std::vector<double> dp(m + 1, 0.0);
    dp[0] = 1.0;
    int filled = 0;
    for (double p : probs) {
        for (int c = filled + 1; c >= 1; --c) dp[c] = dp[c] * (1.0 - p) + dp[c - 1] * p;
        dp[0] *= (1.0 - p);
        ++filled;
    }
    double tail = 0.0;
    for (int c = threshold; c <= m; ++c) tail += dp[c];
    return std::min(1.0, std::max(0.0, tail));
}

std::vector<double> exact_selection_probabilities(const Instance& instance,
                                                  const Assignment& assignment,
                                                  const Profile& profile, double epsilon) {
    const auto quota = NominationQuota::from(instance, epsilon);
    const int threshold = acceptance_threshold(instance.m);
    std::vector<double> out(instance.n + 1, 0.0);
    std::vector<double> probs;
    for (AgentId j = 1; j <= instance.n; ++j) {
        probs.clear();
        for (AgentId i : assignment.reviewers[j])
            probs.push_back(nomination_probability(profile.rank_of(i, j), quota));
        out[j] = poisson_binomial_tail(probs, threshold);
    }
    return out;
}

}  // namespace peersel
