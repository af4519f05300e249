#pragma once

#include <cstdint>
#include <vector>

#include "peersel/core.hpp"

namespace peersel {

// Nomination quota (k/n)*m + epsilon, split into its certain integer part and
// the fractional-nomination probability. Negative epsilon is allowed; the
// quota is floored at 0 and values >= m nominate every pool position.
struct NominationQuota {
    double quota = 0.0;
    int integer_part = 0;
    double fractional_part = 0.0;

    static NominationQuota from(const Instance& instance, double epsilon);
    static NominationQuota from_value(double quota);
};

// Probability that the agent at the given pool position (1 = best) is
// nominated by that reviewer.
double nomination_probability(int rank_in_pool, const NominationQuota& quota);

// Acceptance threshold ceil(m/2); even m needs only half, not a majority.
inline int acceptance_threshold(int m) { return (m + 1) / 2; }

// Algorithm: each reviewer certainly nominates their top floor(quota) pool
// members and fractionally nominates the next one; an agent is accepted when
// at least ceil(m/2) of their m reviewers nominate them. Each fractional draw
// is an independent Bernoulli sub-seeded from (seed, reviewer, reviewee), so
// the run is deterministic given the seed.
SelectionResult run_peer_nomination(const Instance& instance, const Assignment& assignment,
                                    const Profile& profile, double epsilon, std::uint64_t seed);

// Exact law of the mechanism's randomness: for each agent, the Poisson-
// binomial tail P[nomCount >= ceil(m/2)] over the per-reviewer nomination
// probabilities. Index 0 unused.
std::vector<double> exact_selection_probabilities(const Instance& instance,
                                                  const Assignment& assignment,
                                                  const Profile& profile, double epsilon);

// Tail P[sum of independent Bernoulli(p_i) >= threshold], O(m^2) DP.
double poisson_binomial_tail(const std::vector<double>& probs, int threshold);

}  // namespace peersel
