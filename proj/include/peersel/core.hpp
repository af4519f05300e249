#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace peersel {

// Agents are 1-based and the index doubles as the ground-truth rank:
// agent 1 is truly best, agent n truly worst.
using AgentId = int;

struct Instance {
    int n = 0;  // number of agents
    int m = 0;  // reviews given = reviews received
    int k = 0;  // target selection size

    bool valid() const { return n >= 2 && m >= 1 && m <= n - 1 && k >= 1 && k <= n; }
};

// m-regular review assignment. pools[i] is A(i), the set of agents reviewer i
// ranks; reviewers[j] is A^{-1}(j). Index 0 is unused.
struct Assignment {
    std::vector<std::vector<AgentId>> pools;
    std::vector<std::vector<AgentId>> reviewers;

    static Assignment from_pools(int n, std::vector<std::vector<AgentId>> pools);
};

// Strict ranking of each reviewer's pool. order[i] lists A(i) best-to-worst;
// rank_of(i, j) is sigma_i(j) in {1..m}, or 0 if j is not in i's pool.
class Profile {
public:
    Profile() = default;
    Profile(int n, std::vector<std::vector<AgentId>> order);

    int n() const { return n_; }
    const std::vector<AgentId>& order_of(AgentId reviewer) const { return order_[reviewer]; }
    int rank_of(AgentId reviewer, AgentId reviewee) const {
        return rank_[static_cast<std::size_t>(reviewer) * (n_ + 1) + reviewee];
    }

    // Replaces reviewer's ranking with a new order over the same pool.
    void set_order(AgentId reviewer, std::vector<AgentId> new_order);

private:
    int n_ = 0;
    std::vector<std::vector<AgentId>> order_;
    std::vector<int> rank_;  // (n+1) x (n+1), 0 = not reviewed
};

struct FractionalDraw {
    AgentId reviewer = 0;
    AgentId reviewee = 0;
    bool nominated = false;
};

struct SelectionResult {
    std::vector<AgentId> accepted;          // sorted ascending
    std::vector<int> nomination_counts;     // size n+1; index 0 unused
    std::vector<FractionalDraw> fractional_draws;

    bool contains(AgentId j) const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_assignment(const Instance& instance, const Assignment& assignment);

// The unique profile consistent with the ground truth: every reviewer ranks
// their pool by ascending agent index.
Profile truthful_profile(const Instance& instance, const Assignment& assignment);

// Line-oriented text format, one line per reviewer: "3: 1>5>9".
// Ranked order for profiles; listing order is irrelevant for assignments.
std::string format_profile(const Profile& profile);
std::string format_assignment(const Assignment& assignment);
Profile parse_profile(int n, const std::string& text);
Assignment parse_assignment(int n, const std::string& text);

}  // namespace peersel
