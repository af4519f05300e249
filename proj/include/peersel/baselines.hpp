#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "peersel/assignment.hpp"
#include "peersel/core.hpp"

namespace peersel {

struct BaselineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Borda: rank y in a pool of size m earns m - y points; the k highest totals
// win, ties broken by lower agent index. Not impartial; optimistic baseline.
SelectionResult run_vanilla(const Instance& instance, const Assignment& assignment,
                            const Profile& profile);

// Per-cluster Borda from outside reviewers, floor(k/l) slots per cluster plus
// one extra in each of (k mod l) clusters chosen uniformly by seed.
// Requires a strictly cross-cluster assignment.
SelectionResult run_partition(const Instance& instance, const Clustering& clustering,
                              const Assignment& assignment, const Profile& profile,
                              std::uint64_t seed);

// Exact Dollar Partition: each reviewer's Borda points are normalized to sum
// to 1 (dollar shares); cluster targets proportional to received share mass
// are rounded to integer quotas by randomized apportionment; each cluster
// contributes its top-quota members by received share. Always returns
// exactly k agents.
SelectionResult run_edp(const Instance& instance, const Clustering& clustering,
                        const Assignment& assignment, const Profile& profile, std::uint64_t seed,
                        int k_override = -1);

// Systematic randomized rounding: targets must sum to an integer K (within
// 1e-9; rescaled internally). Every draw sums to K exactly, each quota is
// floor or ceil of its target, and E[quota_c] = target_c.
std::vector<int> randomized_apportionment(const std::vector<double>& targets, std::uint64_t seed);

}  // namespace peersel
