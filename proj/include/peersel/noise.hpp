#pragma once

#include <cstdint>
#include <vector>

#include "peersel/core.hpp"

namespace peersel {

struct MallowsParams {
    double phi = 0.0;  // dispersion in [0,1]; reference ranking is the identity
};

// Draws a full strict ranking of {1..n} (best-to-worst) with probability
// proportional to phi^(Kendall tau distance to the identity), via the
// repeated-insertion model. phi=0 is the identity, phi=1 uniform.
std::vector<AgentId> sample_mallows_ranking(int n, const MallowsParams& params,
                                            std::uint64_t seed);

// Restricts each reviewer's full ranking to their pool, preserving order.
// full_rankings[i] is reviewer i's best-to-worst ranking of all n agents.
Profile project_profile(const Assignment& assignment,
                        const std::vector<std::vector<AgentId>>& full_rankings);

// Number of discordant pairs. Both inputs must rank the same ground set.
int kendall_tau(const std::vector<AgentId>& a, const std::vector<AgentId>& b);

}  // namespace peersel
