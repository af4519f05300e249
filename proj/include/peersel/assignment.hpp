#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "peersel/core.hpp"

namespace peersel {

// Balanced partition of {1..n} into l cells. cell_of[j] in {0..l-1}.
struct Clustering {
    int l = 0;
    std::vector<std::vector<AgentId>> clusters;  // l cells
    std::vector<int> cell_of;                    // size n+1; index 0 unused
};

struct AssignmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Random m-regular assignment built from m review rounds, each a perfect
// reviewer->reviewee matching avoiding self-review and duplicates.
// Deterministic given seed. Throws AssignmentError if the retry budget
// (default 1000 resamples per round) is exhausted.
Assignment generate_assignment(const Instance& instance, std::uint64_t seed,
                               int retry_budget = 1000);

// Random balanced clustering plus an m-regular assignment whose pools contain
// no member of the reviewer's own cluster. Throws AssignmentError when
// cross-cluster m-regularity is infeasible (some complement smaller than m)
// or the retry budget runs out.
std::pair<Clustering, Assignment> generate_clustered_assignment(const Instance& instance, int l,
                                                                std::uint64_t seed,
                                                                int retry_budget = 1000);

// Random balanced partition of {1..n} into l cells.
Clustering random_clustering(int n, int l, std::uint64_t seed);

}  // namespace peersel
